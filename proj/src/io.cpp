#include "dsea/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dsea {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for " + path);
}

namespace {

const char* case_name(FluctCase c) {
  switch (c) {
    case FluctCase::case1: return "case1";
    case FluctCase::case2: return "case2";
    case FluctCase::case3: return "case3";
    default: return "auto";
  }
}

std::string base64_encode(const unsigned char* data, size_t len) {
  static const char tbl[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((len + 2) / 3 * 4);
  for (size_t i = 0; i < len; i += 3) {
    unsigned v = data[i] << 16;
    if (i + 1 < len) v |= data[i + 1] << 8;
    if (i + 2 < len) v |= data[i + 2];
    out.push_back(tbl[(v >> 18) & 63]);
    out.push_back(tbl[(v >> 12) & 63]);
    out.push_back(i + 1 < len ? tbl[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < len ? tbl[v & 63] : '=');
  }
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<unsigned char> out;
  int buf = 0, bits = 0;
  for (char c : text) {
    const int v = val(c);
    if (v < 0) continue;
    buf = (buf << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<unsigned char>((buf >> bits) & 0xff));
    }
  }
  return out;
}

std::string encode_doubles(const std::vector<double>& v) {
  return base64_encode(reinterpret_cast<const unsigned char*>(v.data()),
                       v.size() * sizeof(double));
}

std::vector<double> decode_doubles(const std::string& text) {
  const std::vector<unsigned char> raw = base64_decode(text);
  std::vector<double> v(raw.size() / sizeof(double));
  std::memcpy(v.data(), raw.data(), v.size() * sizeof(double));
  return v;
}

} // namespace

std::string to_json(const FluctuationResult& result) {
  json j;
  j["n0"] = result.n0;
  j["variance_total"] = result.variance_total;
  j["stddev"] = result.stddev;
  j["asymptotic_total"] = result.asymptotic_total;
  j["asymptotic_stddev"] = result.asymptotic_stddev;
  j["quadrature_error"] = result.quadrature_error;
  j["per_species"] = json::array();
  for (const auto& s : result.per_species)
    j["per_species"].push_back({{"id", s.id},
                                {"variance", s.variance},
                                {"error", s.error},
                                {"asymptotic", s.asymptotic},
                                {"case", case_name(s.case_label)}});
  return j.dump(2);
}

std::string to_json(const EquilibriumReport& report) {
  json j;
  j["bins"] = report.bins;
  j["times"] = report.times;
  j["tv"] = report.tv;
  return j.dump(2);
}

std::string to_json(const MeasurementReport& report) {
  json j;
  j["occupancy"] = {report.occupancy1, report.occupancy2};
  j["expected"] = {report.expected1, report.expected2};
  j["overlap"] = report.overlap;
  j["trajectories"] = report.trajectories;
  return j.dump(2);
}

std::string trajectories_csv(const EnsembleResult& result) {
  std::ostringstream out;
  out << "# seed=" << result.seed << "\n";
  out << "trajectory,t,x,y,z,aborted\n";
  out.precision(17);
  for (size_t i = 0; i < result.aborted.size(); ++i)
    for (size_t s = 0; s < result.samples.size(); ++s) {
      const Configuration& c = result.samples[s][i];
      for (const auto& x : c.positions)
        out << i << "," << result.times[s] << "," << x(0) << "," << x(1) << "," << x(2) << ","
            << int(result.aborted[i]) << "\n";
    }
  return out.str();
}

std::string fluct_csv(const std::vector<FluctuationResult>& rows,
                      const std::vector<std::pair<double, double>>& b_cutoff) {
  std::ostringstream out;
  out << "b,cutoff,n0,variance_total,stddev,asymptotic_stddev\n";
  out.precision(12);
  for (size_t i = 0; i < rows.size(); ++i)
    out << b_cutoff[i].first << "," << b_cutoff[i].second << "," << rows[i].n0 << ","
        << rows[i].variance_total << "," << rows[i].stddev << "," << rows[i].asymptotic_stddev
        << "\n";
  return out.str();
}

std::string serialize_state(const QuantumState& state) {
  std::vector<double> raw;
  raw.reserve(static_cast<size_t>(state.amplitudes.size()) * 2);
  for (long i = 0; i < state.amplitudes.size(); ++i) {
    raw.push_back(state.amplitudes(i).real());
    raw.push_back(state.amplitudes(i).imag());
  }
  json j;
  j["kind"] = "state";
  j["dim"] = state.amplitudes.size();
  j["time"] = state.time;
  j["payload"] = encode_doubles(raw);
  return j.dump();
}

QuantumState deserialize_state(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("kind") != "state") throw std::runtime_error("not a state checkpoint");
  QuantumState s;
  s.time = j.at("time").get<double>();
  const std::vector<double> raw = decode_doubles(j.at("payload").get<std::string>());
  const long dim = j.at("dim").get<long>();
  if (static_cast<long>(raw.size()) != 2 * dim)
    throw std::runtime_error("state payload size mismatch");
  s.amplitudes.resize(dim);
  for (long i = 0; i < dim; ++i) s.amplitudes(i) = cplx(raw[2 * i], raw[2 * i + 1]);
  return s;
}

std::string serialize_operator(const OperatorMatrix& op) {
  std::vector<double> vals;
  std::vector<long> rows, cols;
  for (int k = 0; k < op.mat.outerSize(); ++k)
    for (SparseC::InnerIterator it(op.mat, k); it; ++it) {
      rows.push_back(it.row());
      cols.push_back(it.col());
      vals.push_back(it.value().real());
      vals.push_back(it.value().imag());
    }
  json j;
  j["kind"] = "operator";
  j["rows"] = op.mat.rows();
  j["cols"] = op.mat.cols();
  j["hermitian"] = op.hermitian;
  j["coord_rows"] = rows;
  j["coord_cols"] = cols;
  j["payload"] = encode_doubles(vals);
  return j.dump();
}

OperatorMatrix deserialize_operator(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("kind") != "operator") throw std::runtime_error("not an operator checkpoint");
  const auto rows = j.at("coord_rows").get<std::vector<long>>();
  const auto cols = j.at("coord_cols").get<std::vector<long>>();
  const std::vector<double> vals = decode_doubles(j.at("payload").get<std::string>());
  if (vals.size() != 2 * rows.size() || rows.size() != cols.size())
    throw std::runtime_error("operator payload size mismatch");
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    trips.emplace_back(static_cast<int>(rows[i]), static_cast<int>(cols[i]),
                       cplx(vals[2 * i], vals[2 * i + 1]));
  OperatorMatrix op;
  op.mat.resize(j.at("rows").get<long>(), j.at("cols").get<long>());
  op.mat.setFromTriplets(trips.begin(), trips.end());
  op.hermitian = j.at("hermitian").get<bool>();
  if (op.hermitian && !is_hermitian(op.mat))
    throw std::runtime_error("operator flagged Hermitian fails the check");
  return op;
}

} // namespace dsea
