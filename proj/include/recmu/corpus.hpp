#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recmu/equations.hpp"
#include "recmu/term.hpp"
#include "recmu/typecheck.hpp"

namespace recmu {

/// One `*.case` file: `key: value` lines, `#` comments. Keys may repeat
/// (expect-equiv). Paths are relative to the case file.
///
///   name, source                 identification and a one-line description
///   equations, context, term     inputs (term is a file, or inline with term-inline)
///   expect-type T                check at T
///   expect-normal N              leftmost-outermost normal form, alpha-equal to N
///   expect-steps k               length of the leftmost-outermost trace
///   expect-good true|false       goodness verdict of the system
///   expect-order S               order_string() of the analysis
///   expect-equiv U == V / U != V congruence query
///   expect-sn true|false         sn_probe verdict
///   expect-eta k                 longest reduction
///   expect-translation ok        verify_translation passes
///   expect-error Code            typing the term fails with this error code
struct CorpusEntry {
  std::filesystem::path file;
  std::string name;
  std::string source;
  std::vector<std::pair<std::string, std::string>> fields;

  std::optional<std::string> get(const std::string& key) const;
  std::vector<std::string> get_all(const std::string& key) const;
};

CorpusEntry load_case(const std::filesystem::path& file);

/// Every *.case below dir, sorted by path. Throws kIo if dir does not exist.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// Parsed inputs of an entry. term is empty for system-only entries.
struct EntryInputs {
  EquationSystem system;
  std::optional<Term> term;
  std::vector<ContextBinding> bindings;
  Context context;
};

EntryInputs load_inputs(const CorpusEntry& entry);

struct EntryResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> checks;
  std::vector<std::string> failures;
};

EntryResult run_entry(const CorpusEntry& entry, std::size_t fuel);

struct CorpusSummary {
  std::vector<EntryResult> entries;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

/// Runs the entries whose name contains filter, in parallel; results keep
/// the load order.
CorpusSummary run_corpus(const std::vector<CorpusEntry>& entries, std::size_t fuel,
                         const std::string& filter = "");

std::string read_file(const std::filesystem::path& path);

}  // namespace recmu
