#include "mnalign/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mna {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) break;
  }
  return buf;
}

json alignment_to_json(const Alignment& a) {
  json rows = json::array();
  for (int r = 0; r < a.size(); ++r) {
    json tuple = json::array();
    for (int m = 0; m < a.modes(); ++m) tuple.push_back(a.tuples(r, m));
    rows.push_back(std::move(tuple));
  }
  return rows;
}

Alignment alignment_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::runtime_error("alignment JSON must be an array of tuples");
  }
  Alignment a;
  if (j.empty()) return a;
  const int k = static_cast<int>(j.front().size());
  a.tuples.resize(static_cast<int>(j.size()), k);
  for (int r = 0; r < static_cast<int>(j.size()); ++r) {
    const json& tuple = j[r];
    if (static_cast<int>(tuple.size()) != k) {
      throw std::runtime_error("alignment JSON has ragged tuples");
    }
    for (int m = 0; m < k; ++m) a.tuples(r, m) = tuple[m].get<int>();
  }
  return a;
}

void write_alignment_csv(const std::filesystem::path& path,
                         const Alignment& a) {
  std::ofstream out = open_out(path);
  for (int m = 0; m < a.modes(); ++m) {
    out << (m ? "," : "") << "mode_" << m;
  }
  out << "\n";
  for (int r = 0; r < a.size(); ++r) {
    for (int m = 0; m < a.modes(); ++m) {
      out << (m ? "," : "") << a.tuples(r, m);
    }
    out << "\n";
  }
}

json metrics_to_json(const MetricsReport& m) {
  json j;
  j["recovery"] = m.recovery.has_value() ? json(*m.recovery) : json(nullptr);
  j["overlap"] = m.overlap;
  j["aligned_tuples"] = m.aligned_tuples;
  j["objective_weight"] = m.objective_weight;
  j["d_bound"] = m.d_bound.has_value() ? json(*m.d_bound) : json(nullptr);
  j["runtime_seconds"] = m.runtime_seconds;
  return j;
}

std::string metrics_to_csv(const MetricsReport& m) {
  std::ostringstream out;
  out << "recovery,overlap,aligned_tuples,objective_weight,d_bound,runtime_seconds\n";
  out << (m.recovery ? format_double(*m.recovery) : "") << ","
      << format_double(m.overlap) << "," << m.aligned_tuples << ","
      << format_double(m.objective_weight) << ","
      << (m.d_bound ? format_double(*m.d_bound) : "") << ","
      << format_double(m.runtime_seconds) << "\n";
  return out.str();
}

json certificate_to_json(const BoundCertificate& c) {
  json d_rows = json::array();
  for (int i = 0; i < c.d_values.rows(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < c.d_values.cols(); ++j2) {
      const double v = c.d_values(i, j2);
      if (std::isfinite(v)) {
        row.push_back(v);
      } else {
        row.push_back("inf");
      }
    }
    d_rows.push_back(std::move(row));
  }
  json j;
  j["d_values"] = std::move(d_rows);
  j["selected_index"] = c.selected_index;
  j["approximation_factor"] = c.approximation_factor;
  return j;
}

void save_factor_set(const FactorSet& f, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  json manifest;
  manifest["modes"] = f.modes();
  manifest["rank"] = f.rank();
  manifest["alpha"] = f.alpha;
  manifest["iterations"] = f.iterations;
  json sizes = json::array();
  json files = json::array();
  json seeds = json::array();
  for (int i = 0; i < f.modes(); ++i) {
    sizes.push_back(f.mode_size(i));
    const std::string name = "factor_" + std::to_string(i) + ".csv";
    files.push_back(name);
    json seed = json::array();
    for (int r = 0; r < f.seed_vectors[i].size(); ++r) {
      seed.push_back(f.seed_vectors[i][r]);
    }
    seeds.push_back(std::move(seed));

    std::ofstream out = open_out(dir / name);
    // column-major: one line per column, entries comma-separated
    for (int c = 0; c < f.rank(); ++c) {
      for (int r = 0; r < f.mode_size(i); ++r) {
        out << (r ? "," : "") << format_double(f.factors[i](r, c));
      }
      out << "\n";
    }
  }
  manifest["mode_sizes"] = std::move(sizes);
  manifest["factors"] = std::move(files);
  manifest["seed_vectors"] = std::move(seeds);
  write_json_file(dir / "manifest.json", manifest);
}

FactorSet load_factor_set(const std::filesystem::path& dir) {
  const json manifest = read_json_file(dir / "manifest.json");
  FactorSet f;
  f.alpha = manifest.at("alpha").get<double>();
  f.iterations = manifest.at("iterations").get<int>();
  const int modes = manifest.at("modes").get<int>();
  const int rank = manifest.at("rank").get<int>();

  for (int i = 0; i < modes; ++i) {
    const int n = manifest.at("mode_sizes")[i].get<int>();
    const std::string name = manifest.at("factors")[i].get<std::string>();
    std::ifstream in(dir / name);
    if (!in) {
      throw std::runtime_error("cannot open factor file: " + (dir / name).string());
    }
    Eigen::MatrixXd u(n, rank);
    std::string line;
    for (int c = 0; c < rank; ++c) {
      if (!std::getline(in, line)) {
        throw std::runtime_error("truncated factor file: " + name);
      }
      std::istringstream row(line);
      std::string cell;
      for (int r = 0; r < n; ++r) {
        if (!std::getline(row, cell, ',')) {
          throw std::runtime_error("short row in factor file: " + name);
        }
        u(r, c) = std::stod(cell);
      }
    }
    f.factors.push_back(std::move(u));

    const json& seed = manifest.at("seed_vectors")[i];
    Eigen::VectorXd s(static_cast<int>(seed.size()));
    for (int r = 0; r < s.size(); ++r) s[r] = seed[r].get<double>();
    f.seed_vectors.push_back(std::move(s));
  }
  return f;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  return json::parse(in);
}

}  // namespace mna
