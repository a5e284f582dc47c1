#include "rtm/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rtm/rational.hpp"

namespace rtm {

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_eigenvalue_csv(const std::string& path, const std::vector<SpectralSample>& samples) {
  std::ostringstream out;
  out << "trial,index,eigenvalue\n";
  for (const auto& s : samples) {
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
      out << s.trial << ',' << i << ',' << format_real(s.eigenvalues[i]) << '\n';
    }
  }
  write_text_file(path, out.str());
}

std::string spec_json(const EnsembleSpec& spec) {
  std::ostringstream out;
  out << "{\"kind\": \"" << to_string(spec.kind) << "\", \"p\": " << spec.p << ", \"d\": " << spec.d
      << ", \"k\": " << spec.k;
  if (spec.kind == EnsembleKind::PartialTrace) out << ", \"d_a\": " << spec.d_a << ", \"d_b\": " << spec.d_b;
  out << ", \"seed\": " << spec.master_seed << "}";
  return out.str();
}

std::string stats_json(const EnsembleSpec& spec, long long trials, const ExtremeStats& extremes, double ks,
                       const std::vector<MomentEstimate>& moments) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"spec\": " << spec_json(spec) << ",\n";
  out << "  \"trials\": " << trials << ",\n";
  out << "  \"lambda_max\": {\"mean\": " << format_real(extremes.lambda_max_mean)
      << ", \"std\": " << format_real(extremes.lambda_max_std) << "},\n";
  out << "  \"lambda_min\": {\"mean\": " << format_real(extremes.lambda_min_mean)
      << ", \"std\": " << format_real(extremes.lambda_min_std) << "},\n";
  out << "  \"ks\": " << format_real(ks) << ",\n";
  out << "  \"moments\": [";
  for (size_t i = 0; i < moments.size(); ++i) {
    if (i) out << ", ";
    out << "{\"m\": " << moments[i].m << ", \"mean\": " << format_real(moments[i].mean)
        << ", \"std_error\": " << format_real(moments[i].std_error) << "}";
  }
  out << "]\n}\n";
  return out.str();
}

}  // namespace rtm
