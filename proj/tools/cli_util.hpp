#ifndef FRACCALC_CLI_UTIL_HPP
#define FRACCALC_CLI_UTIL_HPP

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

// CLI-side plumbing: RFC-4180 CSV emission, a seedable splittable PRNG, and a
// deterministic worker pool (cells write private buffers, rows merge in cell
// order so the byte stream is independent of the worker count).

namespace cli {

// splitmix64: 64-bit state, one multiplicative split per stream.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Independent stream for worker cell `i` under the same base seed.
  static SplitMix64 split(std::uint64_t seed, std::uint64_t cell) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (cell + 1)));
    g.next();
    return g;
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

// Shortest round-trip decimal form.
inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt(std::size_t x) { return std::to_string(x); }
inline std::string fmt(int x) { return std::to_string(x); }
inline std::string fmt(long x) { return std::to_string(x); }

struct Row {
  std::vector<std::string> fields; // command, params..., value, threshold, status
  bool failed = false;             // contract violation
  bool errored = false;            // internal evaluation failure
};

inline Row make_row(const std::string& command, std::vector<std::string> params,
                    std::size_t n_params, const std::string& value,
                    const std::string& threshold, const std::string& status) {
  Row r;
  r.fields.push_back(command);
  params.resize(n_params);
  for (auto& p : params) r.fields.push_back(std::move(p));
  r.fields.push_back(value);
  r.fields.push_back(threshold);
  r.fields.push_back(status);
  r.failed = (status == "fail");
  r.errored = (status == "error");
  return r;
}

inline void write_csv_field(std::ostream& os, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    os << field;
    return;
  }
  os << '"';
  for (char c : field) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    write_csv_field(os, fields[i]);
  }
  os << '\n';
}

// Runs `cell(i)` for i in [0, n_cells) on a pool sized by FRACCALC_WORKERS
// (default: hardware concurrency); output preserves cell order.
inline std::vector<Row> run_cells(std::size_t n_cells,
                                  const std::function<std::vector<Row>(std::size_t)>& cell) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("FRACCALC_WORKERS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested >= 1) workers = static_cast<unsigned>(requested);
  }
  workers = std::min<unsigned>(workers, n_cells > 0 ? n_cells : 1);

  std::vector<std::vector<Row>> buffers(n_cells);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_cells) return;
      buffers[i] = cell(i);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<Row> rows;
  for (auto& buf : buffers)
    for (auto& r : buf) rows.push_back(std::move(r));
  return rows;
}

// Inclusive numeric grid "start:end:step" (endpoint tolerance 1e-12);
// a bare number denotes the singleton grid.
std::vector<double> parse_grid(const std::string& spec);

} // namespace cli

#endif
