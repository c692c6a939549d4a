#include "neadmm/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

namespace neadmm::io {
namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool NextLine(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SolverError(ErrorCode::kIo, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

void WriteTraceCsv(std::ostream& out, const std::vector<TraceRow>& trace,
                   const std::vector<diagnostics::DiagnosticsRow>* diag) {
  if (diag != nullptr && diag->size() != trace.size()) {
    throw SolverError(ErrorCode::kDimensionMismatch, "diagnostics rows do not match the trace");
  }
  out << kTraceHeader << (diag != nullptr ? kDiagnosticsColumns : "") << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceRow& r = trace[i];
    out << r.k << ',' << FormatDouble(r.objective) << ',' << FormatDouble(r.r_norm) << ','
        << FormatDouble(r.s_norm) << ',' << FormatDouble(r.rho);
    if (diag != nullptr) {
      const auto& d = (*diag)[i];
      out << ',' << FormatDouble(d.bound) << ',' << FormatDouble(d.gap) << ','
          << FormatDouble(d.lyapunov) << ',' << FormatDouble(d.vi_norm);
    }
    out << '\n';
  }
}

Table ReadNumericCsv(std::istream& in) {
  Table t;
  std::string line;
  if (!NextLine(in, line)) throw SolverError(ErrorCode::kIo, "missing header row");
  t.header = SplitLine(line);
  while (NextLine(in, line)) {
    const auto cells = SplitLine(line);
    if (cells.size() != t.header.size()) throw SolverError(ErrorCode::kIo, "ragged row: " + line);
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(ParseDouble(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void WriteReportCsv(std::ostream& out, const std::vector<diagnostics::DiagnosticsRow>& rows) {
  out << kReportHeader << '\n';
  for (const auto& r : rows) {
    out << r.k << ',' << FormatDouble(r.bound) << ',' << FormatDouble(r.gap) << ','
        << FormatDouble(r.lyapunov) << ',' << FormatDouble(r.vi_norm) << ',' << r.flags << '\n';
  }
}

void WriteBagCsv(std::ostream& out, const maxop::BagDataset& data) {
  out << "bag_id,label";
  for (Eigen::Index j = 0; j < data.num_features(); ++j) out << ",f" << (j + 1);
  out << '\n';
  for (Eigen::Index i = 0; i < data.num_bags(); ++i) {
    for (Eigen::Index r = 0; r < data.bag_size(i); ++r) {
      out << i << ',' << FormatDouble(data.labels()[i]);
      const auto row = data.instances().row(data.bag_begin(i) + r);
      for (Eigen::Index j = 0; j < row.size(); ++j) out << ',' << FormatDouble(row[j]);
      out << '\n';
    }
  }
}

maxop::BagDataset ReadBagCsv(std::istream& in) {
  std::string line;
  if (!NextLine(in, line)) throw SolverError(ErrorCode::kIo, "missing header row");
  const auto header = SplitLine(line);
  if (header.size() < 3 || header[0] != "bag_id" || header[1] != "label") {
    throw SolverError(ErrorCode::kIo, "header must be bag_id,label,f1..fp");
  }
  const std::size_t p = header.size() - 2;

  std::vector<std::string> order;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<std::vector<double>>> rows;
  std::vector<double> labels;
  while (NextLine(in, line)) {
    const auto cells = SplitLine(line);
    if (cells.size() != header.size()) throw SolverError(ErrorCode::kIo, "ragged row: " + line);
    const double label = ParseDouble(cells[1]);
    auto [it, fresh] = slot.emplace(cells[0], order.size());
    if (fresh) {
      order.push_back(cells[0]);
      rows.emplace_back();
      labels.push_back(label);
    } else if (labels[it->second] != label) {
      throw SolverError(ErrorCode::kIo, "conflicting labels in bag " + cells[0]);
    }
    std::vector<double> feat(p);
    for (std::size_t j = 0; j < p; ++j) feat[j] = ParseDouble(cells[j + 2]);
    rows[it->second].push_back(std::move(feat));
  }
  if (order.empty()) throw SolverError(ErrorCode::kIo, "dataset has no rows");

  std::vector<DenseMatrix> bags;
  for (const auto& bag : rows) {
    DenseMatrix m(static_cast<Eigen::Index>(bag.size()), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < bag.size(); ++r) {
      for (std::size_t j = 0; j < p; ++j) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = bag[r][j];
      }
    }
    bags.push_back(std::move(m));
  }
  return maxop::BagDataset(bags, Eigen::Map<const DenseVector>(labels.data(),
                                                               static_cast<Eigen::Index>(labels.size())));
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SolverError(ErrorCode::kIo, "cannot open for writing: " + path);
  f << contents;
  if (!f) throw SolverError(ErrorCode::kIo, "write failed: " + path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw SolverError(ErrorCode::kIo, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace neadmm::io
