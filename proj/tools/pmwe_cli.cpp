#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "pmwe/decoder.hpp"
#include "pmwe/lower_bound.hpp"
#include "pmwe/sketch.hpp"

namespace {

using namespace pmwe;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCorrupt = 4;
constexpr int kExitVerify = 5;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path);
}

std::string show_byte(std::uint8_t c) {
  if (c >= 0x21 && c < 0x7f && c != '\\') return std::string(1, static_cast<char>(c));
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02x", c);
  return buf;
}

std::string show_info(const EditInfo& info, const Alphabet& ab) {
  std::string out;
  for (const EditTuple& e : info) {
    if (!out.empty()) out += ' ';
    const std::string at = std::to_string(e.x) + "/" + std::to_string(e.y);
    switch (e.op()) {
      case Op::kDelete: out += "D" + at + ":" + show_byte(ab.table[e.cx]); break;
      case Op::kInsert: out += "I" + at + ":" + show_byte(ab.table[e.cy]); break;
      case Op::kSubstitute:
        out += "S" + at + ":" + show_byte(ab.table[e.cx]) + ">" + show_byte(ab.table[e.cy]);
        break;
    }
  }
  return out.empty() ? "=" : out;
}

void print_report(std::ostream& os, const OccurrenceReport& rep, const Alphabet& ab) {
  for (const Occurrence& o : rep.occurrences) {
    os << o.t << '\t' << o.t_end << '\t' << o.dist << '\t';
    for (std::size_t i = 0; i < o.edit_infos.size(); ++i) os << (i ? " | " : "") << show_info(o.edit_infos[i], ab);
    if (o.truncated) os << " | ...";
    os << '\n';
  }
}

RawPolicy parse_policy(const std::string& s) { return s == "strict" ? RawPolicy::kStrict : RawPolicy::kStructural; }

void print_sizes(std::ostream& os, const Sketch& s, const SizeReport& size, const std::vector<BlockReport>& reps) {
  const auto& h = s.header;
  os << "total_bits " << size.total_bits << '\n';
  os << "header_bits " << size.header_bits << " (alphabet " << size.alphabet_bits << ")\n";
  os << "payload_bits " << size.payload_bits() << '\n';
  os << "crc_bits " << size.crc_bits << '\n';
  std::map<std::string, int> modes;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    modes[to_string(s.blocks[i].mode)]++;
    os << "block " << i << ' ' << to_string(s.blocks[i].mode) << ' ' << size.block_bits[i] << " bits";
    if (i < reps.size() && !reps[i].fallback.empty()) os << " (periodic fallback: " << reps[i].fallback << ')';
    os << '\n';
  }
  for (const auto& [mode, count] : modes) os << "mode " << mode << ' ' << count << '\n';
  const double sigma = static_cast<double>(h.alphabet.size());
  const double k = static_cast<double>(std::max<Pos>(h.k, 1));
  if (h.m > 0) {
    const double ref = static_cast<double>(h.n) / static_cast<double>(h.m) * k *
                       std::log2(std::max(2.0, static_cast<double>(h.m) * sigma / k));
    os << "reference_bits " << ref << '\n';
  }
}

int cmd_encode(const std::string& pf, const std::string& tf, Pos k, const std::string& out, const EncoderOptions& opt,
               bool positions_only) {
  const std::string p = read_file(pf);
  std::string t = read_file(tf);
  if (positions_only) {
    t = reduce_text_alphabet(p, t);
    std::cout << "sigma_reduced " << Alphabet::from_bytes(p, t).size() << '\n';
  }
  std::vector<BlockReport> reps;
  const Sketch s = encode(p, t, k, opt, &reps);
  SizeReport size;
  const auto bytes = serialize_sketch(s, &size);
  write_file(out, bytes);
  print_sizes(std::cout, s, size, reps);
  return kExitOk;
}

int cmd_decode(const std::string& in, std::size_t cap) {
  const std::string raw = read_file(in);
  const std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
  const Sketch s = deserialize_sketch(bytes);
  print_report(std::cout, decode(s, cap), s.header.alphabet);
  return kExitOk;
}

int cmd_verify(const std::string& pf, const std::string& tf, Pos k, std::size_t cap, const EncoderOptions& opt) {
  const std::string p = read_file(pf), t = read_file(tf);
  const auto bytes = serialize_sketch(encode(p, t, k, opt));
  const OccurrenceReport got = decode(deserialize_sketch(bytes), cap);
  const Alphabet ab = Alphabet::from_bytes(p, t);
  const OccurrenceReport want = find_occurrences(ab.encode(p), ab.encode(t), k, cap);
  if (got == want) {
    std::cout << "PASS " << want.occurrences.size() << " occurrences, " << bytes.size() * 8 << " bits\n";
    return kExitOk;
  }
  std::size_t i = 0;
  while (i < got.occurrences.size() && i < want.occurrences.size() && got.occurrences[i] == want.occurrences[i]) ++i;
  std::cout << "FAIL at entry " << i << '\n';
  if (i < want.occurrences.size())
    std::cout << "expected " << want.occurrences[i].t << ' ' << want.occurrences[i].t_end << ' '
              << want.occurrences[i].dist << '\n';
  if (i < got.occurrences.size())
    std::cout << "decoded " << got.occurrences[i].t << ' ' << got.occurrences[i].t_end << ' '
              << got.occurrences[i].dist << '\n';
  return kExitVerify;
}

// Random texts with planted k-edit copies of P.
int cmd_bench(const std::string& grid_spec, int trials, std::uint64_t seed, const EncoderOptions& opt) {
  const auto grid = parse_grid(grid_spec);
  std::cout << "m,n,k,sigma,seed,total_bits,payload_bits,blocks,general,periodic,bc_zero,empty,raw,"
               "periodic_attempts,periodic_fallbacks,decode_ok\n";
  bool ok = true;
  std::uint64_t s = seed;
  for (const auto& c : grid) {
    for (int trial = 0; trial < trials; ++trial, ++s) {
      std::mt19937_64 rng(s);
      auto sym = [&] { return static_cast<char>('a' + rng() % static_cast<std::uint64_t>(c.sigma)); };
      std::string p, t;
      for (Pos i = 0; i < c.m; ++i) p.push_back(sym());
      while (static_cast<Pos>(t.size()) < c.n) {
        if (rng() % 2) {
          std::string copy = p;
          for (Pos e = 0; e < c.k && !copy.empty(); ++e) copy[rng() % copy.size()] = sym();
          t += copy;
        } else {
          for (Pos i = 0; i < c.m / 2; ++i) t.push_back(sym());
        }
      }
      t.resize(static_cast<std::size_t>(c.n));
      std::vector<BlockReport> reps;
      const Sketch sk = encode(p, t, c.k, opt, &reps);
      SizeReport size;
      const auto bytes = serialize_sketch(sk, &size);
      const auto got = decode(deserialize_sketch(bytes));
      const Alphabet ab = Alphabet::from_bytes(p, t);
      const bool good = got == find_occurrences(ab.encode(p), ab.encode(t), c.k);
      ok = ok && good;
      std::map<BlockMode, int> modes;
      int attempts = 0, fallbacks = 0;
      for (const auto& r : reps) {
        modes[r.mode]++;
        attempts += r.periodic_attempted;
        fallbacks += !r.fallback.empty();
      }
      std::cout << c.m << ',' << c.n << ',' << c.k << ',' << c.sigma << ',' << s << ',' << size.total_bits << ','
                << size.payload_bits() << ',' << sk.blocks.size() << ',' << modes[BlockMode::kGeneral] << ','
                << modes[BlockMode::kPeriodic] << ',' << modes[BlockMode::kBcZero] << ','
                << modes[BlockMode::kEmpty] << ',' << modes[BlockMode::kRaw] << ',' << attempts << ',' << fallbacks
                << ',' << (good ? 1 : 0) << '\n';
    }
  }
  return ok ? kExitOk : kExitVerify;
}

int cmd_lowerbound(const std::string& grid_spec, int trials, std::uint64_t seed, const std::string& out,
                   const EncoderOptions& opt) {
  const auto rows = run_experiment(parse_grid(grid_spec), trials, seed, opt);
  if (out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream os(out);
    if (!os) throw IoError("cannot write " + out);
    write_csv(os, rows);
  }
  for (const auto& r : rows)
    if (!r.decode_ok) return kExitVerify;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern matching with edits: sketch encoder and decoder"};
  app.require_subcommand(1);

  std::string pattern, text, out, sketch_file, grid = "128,1024,1,2;128,1024,4,2;128,1024,16,2;128,1024,1,16;128,1024,4,16;128,1024,16,16";
  std::string policy = "structural";
  Pos k = 1;
  std::size_t cap = kDefaultCap;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  int trials = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--raw-policy", policy, "structural or strict")
        ->check(CLI::IsMember({"structural", "strict"}));
    sub->add_option("--jobs", jobs, "worker threads for block encoding")->check(CLI::PositiveNumber);
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("pattern", pattern, "pattern file (raw bytes)")->required();
    sub->add_option("text", text, "text file (raw bytes)")->required();
    sub->add_option("--k", k, "error threshold")->required()->check(CLI::NonNegativeNumber);
  };

  auto* enc = app.add_subcommand("encode", "write a sketch and print its size breakdown");
  add_instance(enc);
  add_common(enc);
  enc->add_option("--out", out, "sketch file")->required();

  auto* pos = app.add_subcommand("positions", "encode after collapsing text symbols absent from the pattern");
  add_instance(pos);
  add_common(pos);
  pos->add_option("--out", out, "sketch file")->required();

  auto* dec = app.add_subcommand("decode", "list the occurrences stored in a sketch");
  dec->add_option("sketch", sketch_file, "sketch file")->required();
  dec->add_option("--cap", cap, "alignments listed per occurrence")->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "encode, decode and compare against direct matching");
  add_instance(ver);
  add_common(ver);
  ver->add_option("--cap", cap, "alignments compared per occurrence")->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "sizes and modes on random instances with planted occurrences");
  add_common(bench);
  bench->add_option("--grid", grid, "cells m,n,k,sigma separated by ';'");
  bench->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed);

  auto* lb = app.add_subcommand("lowerbound", "adversarial family sizes against the entropy bound (CSV)");
  add_common(lb);
  lb->add_option("--grid", grid, "cells m,n,k,sigma separated by ';'");
  lb->add_option("--trials", trials)->check(CLI::PositiveNumber);
  lb->add_option("--seed", seed);
  lb->add_option("--out", out, "CSV file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  EncoderOptions opt;
  opt.raw_policy = parse_policy(policy);
  opt.jobs = jobs;
  try {
    if (*enc) return cmd_encode(pattern, text, k, out, opt, false);
    if (*pos) return cmd_encode(pattern, text, k, out, opt, true);
    if (*dec) return cmd_decode(sketch_file, cap);
    if (*ver) return cmd_verify(pattern, text, k, cap, opt);
    if (*bench) return cmd_bench(grid, trials, seed, opt);
    if (*lb) return cmd_lowerbound(grid, trials, seed, out, opt);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const CorruptSketch& e) {
    std::cerr << "corrupt sketch: " << e.what() << '\n';
    return kExitCorrupt;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
