#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "neadmm/diagnostics.hpp"
#include "neadmm/engine.hpp"
#include "neadmm/maxop.hpp"

namespace neadmm::io {

/// Shortest decimal that parses back to exactly `v`.
std::string FormatDouble(double v);

/// Whole-string parse; throws kIo on trailing characters or bad input.
double ParseDouble(std::string_view s);

inline constexpr const char* kTraceHeader = "iter,objective,primal_residual,dual_residual,rho";
inline constexpr const char* kDiagnosticsColumns = ",bound,gap,lyapunov,vi_norm";
inline constexpr const char* kReportHeader = "k,bound,gap,V,vi_norm,flags";

/// Writes the trace. When `diag` is non-null it must hold one row per trace row
/// and the diagnostics columns are appended.
void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& trace,
                   const std::vector<diagnostics::DiagnosticsRow>* diag = nullptr);

/// Numeric table with its header, as read back from a CSV file.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a CSV of numbers with a header row. Throws kIo on ragged or bad rows.
Table ReadNumericCsv(std::istream& in);

/// Diagnostics report: k,bound,gap,V,vi_norm,flags.
void WriteReportCsv(std::ostream& out, const std::vector<diagnostics::DiagnosticsRow>& rows);

/// bag_id,label,f1..fp; one row per instance, bags in order.
void WriteBagCsv(std::ostream& out, const maxop::BagDataset& data);

/// Rows sharing a bag_id form one bag, in order of first appearance. Throws kIo
/// on malformed input such as a bad header or conflicting labels within a bag.
maxop::BagDataset ReadBagCsv(std::istream& in);

/// File wrappers; throw kIo when the file cannot be opened.
void WriteFile(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

}  // namespace neadmm::io
