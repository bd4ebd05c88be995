#include "pmwe/lower_bound.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pmwe/decoder.hpp"

namespace pmwe {

namespace {

std::string to_bytes(const Str& s) {
  std::string out;
  out.reserve(s.size());
  for (Symbol c : s) out.push_back(static_cast<char>(c));
  return out;
}

double log2_big(const boost::multiprecision::cpp_int& v) {
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(v));
  if (bits < 52) return std::log2(v.convert_to<double>());
  const unsigned shift = bits - 52;
  const boost::multiprecision::cpp_int top = v >> shift;
  return std::log2(top.convert_to<double>()) + shift;
}

}  // namespace

std::string AdversarialInstance::p_bytes() const { return to_bytes(p); }
std::string AdversarialInstance::t_bytes() const { return to_bytes(t); }

AdversarialInstance generate_adversarial(Pos m, Pos n, Pos k, Pos sigma, std::uint64_t seed) {
  if (sigma < 2 || sigma > 256 || k <= 0 || k > m || m > n)
    throw std::invalid_argument("need 2 <= sigma <= 256 and 0 < k <= m <= n");
  AdversarialInstance inst{m, n, k, sigma, seed, Str(static_cast<std::size_t>(m), 0), Str(static_cast<std::size_t>(n), 0)};
  std::mt19937_64 rng(seed);
  std::vector<Pos> idx(static_cast<std::size_t>(m));
  for (Pos q = 0; q < n / m; ++q) {
    const Pos count = std::uniform_int_distribution<Pos>(0, k)(rng);
    for (Pos i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
    // Partial Fisher-Yates picks `count` distinct positions.
    for (Pos i = 0; i < count; ++i) {
      const Pos j = std::uniform_int_distribution<Pos>(i, m - 1)(rng);
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      const Symbol c = static_cast<Symbol>(std::uniform_int_distribution<Pos>(1, sigma - 1)(rng));
      inst.t[static_cast<std::size_t>(q * m + idx[static_cast<std::size_t>(i)])] = c;
    }
  }
  return inst;
}

double entropy_bound_bits(Pos m, Pos n, Pos k, Pos sigma) {
  using boost::multiprecision::cpp_int;
  cpp_int sum = 0, binom = 1, power = 1;
  for (Pos i = 0; i <= k && i <= m; ++i) {
    sum += binom * power;
    binom = binom * (m - i) / (i + 1);
    power *= (sigma - 1);
  }
  return static_cast<double>(n / m) * log2_big(sum);
}

std::vector<GridCell> parse_grid(const std::string& spec) {
  std::vector<GridCell> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    GridCell c;
    char sep[3];
    std::stringstream is(item);
    if (!(is >> c.m >> sep[0] >> c.n >> sep[1] >> c.k >> sep[2] >> c.sigma) || sep[0] != ',' || sep[1] != ',' ||
        sep[2] != ',')
      throw std::invalid_argument("grid cell must be m,n,k,sigma: " + item);
    out.push_back(c);
  }
  return out;
}

std::vector<ExperimentRow> run_experiment(const std::vector<GridCell>& grid, int trials, std::uint64_t seed,
                                          const EncoderOptions& opt) {
  std::vector<ExperimentRow> rows;
  std::uint64_t s = seed;
  for (const GridCell& c : grid) {
    for (int trial = 0; trial < trials; ++trial, ++s) {
      const AdversarialInstance inst = generate_adversarial(c.m, c.n, c.k, c.sigma, s);
      const std::string p = inst.p_bytes(), t = inst.t_bytes();
      SizeReport size;
      const auto bytes = serialize_sketch(encode(p, t, c.k, opt), &size);
      const OccurrenceReport got = decode(deserialize_sketch(bytes));
      const Alphabet ab = Alphabet::from_bytes(p, t);
      const OccurrenceReport want = find_occurrences(ab.encode(p), ab.encode(t), c.k);
      ExperimentRow row;
      row.cell = c;
      row.seed = s;
      row.bits_measured = size.total_bits;
      row.header_bits = size.header_bits;
      row.bits_bound = entropy_bound_bits(c.m, c.n, c.k, c.sigma);
      row.ratio = row.bits_bound > 0 ? static_cast<double>(row.bits_measured) / row.bits_bound : 0.0;
      row.decode_ok = got == want;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << "m,n,k,sigma,seed,bits_measured,bits_bound,ratio,decode_ok\n";
  for (const auto& r : rows) {
    os << r.cell.m << ',' << r.cell.n << ',' << r.cell.k << ',' << r.cell.sigma << ',' << r.seed << ','
       << r.bits_measured << ',' << r.bits_bound << ',' << r.ratio << ',' << (r.decode_ok ? 1 : 0) << '\n';
  }
}

}  // namespace pmwe
