#include "robin/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace robin::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_chain_csv(const mcmc::ChainRecord& record, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_chain_csv: cannot open " + path);
  os << "iteration";
  for (int k = -record.K; k <= record.K; ++k) os << ",theta[" << k << "]";
  os << ",loglik,step\n";
  for (std::size_t i = 0; i < record.size(); ++i) {
    os << record.iterations[i];
    for (double t : record.samples[i].theta) os << "," << format_double(t);
    os << "," << format_double(record.logliks[i]) << "," << format_double(record.step_trace[i])
       << "\n";
  }
}

mcmc::ChainRecord read_chain_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_chain_csv: cannot open " + path);
  std::string header;
  if (!std::getline(is, header)) throw std::runtime_error("read_chain_csv: empty file " + path);

  int columns = 1;
  for (char c : header) columns += (c == ',');
  const int n_theta = columns - 3;
  if (n_theta < 1 || n_theta % 2 == 0)
    throw std::runtime_error("read_chain_csv: malformed header in " + path);

  mcmc::ChainRecord rec;
  rec.K = n_theta / 2;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    rec.iterations.push_back(std::stol(cell));
    prior::CoeffVector c(rec.K);
    for (int i = 0; i < n_theta; ++i) {
      std::getline(ss, cell, ',');
      c.theta[i] = std::stod(cell);
    }
    rec.samples.push_back(std::move(c));
    std::getline(ss, cell, ',');
    rec.logliks.push_back(std::stod(cell));
    std::getline(ss, cell, ',');
    rec.step_trace.push_back(std::stod(cell));
    rec.accept_flags.push_back(1);  // not persisted in the CSV
  }
  return rec;
}

void write_band_csv(const std::vector<double>& grid, const std::vector<double>& lower,
                    const std::vector<double>& mean, const std::vector<double>& upper,
                    const std::vector<double>& truth, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_band_csv: cannot open " + path);
  os << "x,lower,mean,upper,truth\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << format_double(grid[i]) << "," << format_double(lower[i]) << "," << format_double(mean[i])
       << "," << format_double(upper[i]) << "," << format_double(truth[i]) << "\n";
}

void write_trace_csv(const mcmc::ChainRecord& record, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_trace_csv: cannot open " + path);
  os << "iteration,loglik,step\n";
  for (std::size_t i = 0; i < record.size(); ++i)
    os << record.iterations[i] << "," << format_double(record.logliks[i]) << ","
       << format_double(record.step_trace[i]) << "\n";
}

void write_coeff_samples_csv(const mcmc::ChainRecord& record, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_coeff_samples_csv: cannot open " + path);
  for (int k = -record.K; k <= record.K; ++k) os << (k > -record.K ? "," : "") << "theta[" << k << "]";
  os << "\n";
  for (const auto& s : record.samples) {
    for (int i = 0; i < s.size(); ++i) os << (i ? "," : "") << format_double(s.theta[i]);
    os << "\n";
  }
}

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_json: cannot open " + path);
  os << j.dump(2) << "\n";
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_file: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::uint64_t hash_file(const std::string& path) { return fnv1a_hash(read_file(path)); }

}  // namespace robin::io
