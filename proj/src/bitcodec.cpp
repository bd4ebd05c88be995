#include "pmwe/bitcodec.hpp"

#include <algorithm>
#include <bit>
#include <boost/crc.hpp>

namespace pmwe {

void BitWriter::put_bit(bool b) {
  if (bits_ % 8 == 0) bytes_.push_back(0);
  if (b) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
  ++bits_;
}

void BitWriter::put_bits(std::uint64_t value, unsigned width) {
  for (unsigned i = width; i-- > 0;) put_bit((value >> i) & 1u);
}

void BitWriter::put_gamma(std::uint64_t v) {
  if (v == UINT64_MAX) throw std::overflow_error("gamma value too large");
  const std::uint64_t x = v + 1;
  const unsigned nbits = static_cast<unsigned>(std::bit_width(x));
  put_bits(0, nbits - 1);
  put_bits(x, nbits);
}

void BitWriter::pad_to_byte() {
  while (bits_ % 8 != 0) put_bit(false);
}

void BitWriter::append(const BitWriter& other) {
  if (bits_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    bits_ += other.bits_;
    return;
  }
  for (std::uint64_t i = 0; i < other.bits_; ++i)
    put_bit((other.bytes_[static_cast<std::size_t>(i / 8)] >> (7 - i % 8)) & 1u);
}

unsigned gamma_length(std::uint64_t v) { return 2 * static_cast<unsigned>(std::bit_width(v + 1)) - 1; }

BitReader::BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_begin, std::uint64_t bit_end)
    : bytes_(bytes), pos_(bit_begin), end_(std::min<std::uint64_t>(bit_end, bytes.size() * 8)) {}

bool BitReader::get_bit() {
  if (pos_ >= end_) throw StreamUnderflow();
  const bool b = (bytes_[static_cast<std::size_t>(pos_ / 8)] >> (7 - pos_ % 8)) & 1u;
  ++pos_;
  return b;
}

std::uint64_t BitReader::get_bits(unsigned width) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v = (v << 1) | (get_bit() ? 1u : 0u);
  return v;
}

std::uint64_t BitReader::get_gamma() {
  unsigned zeros = 0;
  while (!get_bit()) {
    if (++zeros > 62) throw CorruptSketch("gamma code too long");
  }
  const std::uint64_t x = (std::uint64_t{1} << zeros) | get_bits(zeros);
  return x - 1;
}

std::uint64_t BitReader::get_gamma_at_most(std::uint64_t max) {
  const std::uint64_t v = get_gamma();
  if (v > max) throw CorruptSketch("value out of range");
  return v;
}

void BitReader::skip_padding() {
  while (pos_ % 8 != 0) {
    if (get_bit()) throw CorruptSketch("nonzero padding");
  }
}

namespace {

constexpr unsigned kOpBits = 2;

Symbol read_symbol(BitReader& r, unsigned width, Symbol sigma) {
  const auto v = r.get_bits(width);
  if (v >= sigma) throw CorruptSketch("symbol outside the alphabet");
  return static_cast<Symbol>(v);
}

}  // namespace

void encode_edit_info(BitWriter& w, const EditInfo& info, Point start, unsigned width) {
  w.put_gamma(info.size());
  Point cur = start;
  for (const EditTuple& e : info) {
    const Pos gap = e.x - cur.x;
    if (gap < 0 || e.y - cur.y != gap) throw MalformedEditInfo("edit tuple off the path");
    w.put_gamma(static_cast<std::uint64_t>(gap));
    const Op op = e.op();
    w.put_bits(static_cast<std::uint64_t>(op), kOpBits);
    if (op != Op::kInsert) w.put_bits(e.cx, width);
    if (op != Op::kDelete) w.put_bits(e.cy, width);
    cur = {e.x + (op != Op::kInsert ? 1 : 0), e.y + (op != Op::kDelete ? 1 : 0)};
  }
}

EditInfo decode_edit_info(BitReader& r, Point start, unsigned width, Symbol sigma, Pos max_cost) {
  const auto cost = r.get_gamma_at_most(static_cast<std::uint64_t>(max_cost));
  EditInfo info;
  info.reserve(static_cast<std::size_t>(cost));
  Point cur = start;
  for (std::uint64_t i = 0; i < cost; ++i) {
    const auto gap = static_cast<Pos>(r.get_gamma_at_most(std::uint64_t{1} << 40));
    const auto tag = r.get_bits(kOpBits);
    if (tag > 2) throw CorruptSketch("bad edit tag");
    const Op op = static_cast<Op>(tag);
    EditTuple e;
    e.x = cur.x + gap;
    e.y = cur.y + gap;
    if (op != Op::kInsert) e.cx = read_symbol(r, width, sigma);
    if (op != Op::kDelete) e.cy = read_symbol(r, width, sigma);
    if (op == Op::kSubstitute && e.cx == e.cy) throw CorruptSketch("substitution of equal symbols");
    info.push_back(e);
    cur = {e.x + (op != Op::kInsert ? 1 : 0), e.y + (op != Op::kDelete ? 1 : 0)};
  }
  return info;
}

std::vector<Phrase> factorize(View x) {
  std::vector<Phrase> out;
  if (x.empty()) return out;
  const SelfAligned sa = self_edit_distance(x);
  const auto& pts = sa.path.pts;
  for (std::size_t s = 1; s < pts.size(); ++s) {
    const Point p = pts[s - 1], q = pts[s];
    if (q.x == p.x) continue;  // consumes only the copy source
    const auto xi = static_cast<std::size_t>(p.x);
    if (q.y != p.y && p.x != p.y && x[xi] == x[static_cast<std::size_t>(p.y)]) {
      const Pos delta = p.x - p.y;
      if (!out.empty() && out.back().copy && out.back().delta == delta) ++out.back().length;
      else out.push_back({true, 0, delta, 1});
    } else {
      out.push_back({false, x[xi], 0, 0});
    }
  }
  return out;
}

Str replay(const std::vector<Phrase>& phrases) {
  Str out;
  for (const Phrase& ph : phrases) {
    if (!ph.copy) {
      out.push_back(ph.literal);
      continue;
    }
    if (ph.delta < 1 || ph.delta > static_cast<Pos>(out.size()))
      throw CorruptSketch("copy refers past the start");
    for (Pos i = 0; i < ph.length; ++i) out.push_back(out[out.size() - static_cast<std::size_t>(ph.delta)]);
  }
  return out;
}

void encode_phrases(BitWriter& w, const Str& chars, unsigned width) {
  for (const Phrase& ph : factorize(chars)) {
    w.put_bit(ph.copy);
    if (ph.copy) {
      w.put_gamma(static_cast<std::uint64_t>(ph.delta - 1));
      w.put_gamma(static_cast<std::uint64_t>(ph.length - 1));
    } else {
      w.put_bits(ph.literal, width);
    }
  }
}

Str decode_phrases(BitReader& r, Pos length, unsigned width, Symbol sigma) {
  Str out;
  out.reserve(static_cast<std::size_t>(length));
  while (static_cast<Pos>(out.size()) < length) {
    if (!r.get_bit()) {
      out.push_back(read_symbol(r, width, sigma));
      continue;
    }
    const Pos have = static_cast<Pos>(out.size());
    const Pos delta = static_cast<Pos>(r.get_gamma_at_most(static_cast<std::uint64_t>(have))) + 1;
    if (delta > have) throw CorruptSketch("copy refers past the start");
    const Pos len = static_cast<Pos>(r.get_gamma_at_most(static_cast<std::uint64_t>(length - have))) + 1;
    if (len > length - have) throw CorruptSketch("copy overruns the run");
    for (Pos i = 0; i < len; ++i) out.push_back(out[out.size() - static_cast<std::size_t>(delta)]);
  }
  return out;
}

std::string to_string(BlockMode mode) {
  switch (mode) {
    case BlockMode::kEmpty: return "EMPTY";
    case BlockMode::kRaw: return "RAW";
    case BlockMode::kBcZero: return "BC_ZERO";
    case BlockMode::kGeneral: return "GENERAL";
    case BlockMode::kPeriodic: return "PERIODIC";
  }
  return "?";
}

BlockGeometry block_geometry(Pos n, Pos m, Pos k) {
  BlockGeometry g;
  g.m = m;
  g.pad = std::max<Pos>(0, m - n);
  g.n = n + g.pad;
  g.k = std::min(m, std::max<Pos>(k, 1));
  g.step = (m + 2) / 3 - g.k;
  g.window = (4 * m + 2) / 3;
  g.count = g.step >= 1 ? (g.n + g.step - 1) / g.step : 0;
  return g;
}

std::uint64_t SizeReport::payload_bits() const {
  std::uint64_t s = 0;
  for (auto b : block_bits) s += b;
  return s;
}

namespace {

constexpr std::uint8_t kMagic[4] = {'P', 'M', 'W', 'E'};
constexpr std::uint8_t kVersion = 0x01;
constexpr unsigned kTagBits = 3;

void put_pos(BitWriter& w, Pos v) {
  if (v < 0) throw InvariantViolation("negative field");
  w.put_gamma(static_cast<std::uint64_t>(v));
}

Pos count_op(const EditInfo& info, Op op) { return edit_count(info, op); }

void write_alignments(BitWriter& w, const BlockSketch& b, const BlockGeometry& g, Pos index, unsigned width) {
  put_pos(w, b.ell - g.begin(index));
  put_pos(w, b.r - b.ell);
  put_pos(w, static_cast<Pos>(b.a_list.size()));
  put_pos(w, static_cast<Pos>(b.b_list.size()));
  encode_edit_info(w, b.x_pref.info, {0, 0}, width);
  encode_edit_info(w, b.x_suf.info, {0, b.x_suf.y}, width);
  for (const auto& a : b.a_list) {
    put_pos(w, a.y);
    encode_edit_info(w, a.info, {0, a.y}, width);
  }
  for (const auto& a : b.b_list) {
    put_pos(w, a.x);
    put_pos(w, a.x_len);
    put_pos(w, a.y);
    encode_edit_info(w, a.info, {a.x, a.y}, width);
  }
}

void write_cover(BitWriter& w, const BlockSketch& b, unsigned width) {
  put_pos(w, static_cast<Pos>(b.runs.size()));
  Pos prev = -1;
  for (const auto& run : b.runs) {
    put_pos(w, run.a - prev - 1);
    put_pos(w, run.b - run.a);
    put_pos(w, static_cast<Pos>(run.chars.size()));
    encode_phrases(w, run.chars, width);
    prev = run.b;
  }
}

void write_payload(BitWriter& w, const BlockSketch& b, const SketchHeader& h, const BlockGeometry& g, Pos index,
                   unsigned width) {
  switch (b.mode) {
    case BlockMode::kEmpty: return;
    case BlockMode::kRaw:
      if (static_cast<Pos>(b.raw_p.size()) != h.m || static_cast<Pos>(b.raw_t.size()) != h.n)
        throw InvariantViolation("raw block size differs from the header");
      for (Symbol c : b.raw_p) w.put_bits(c, width);
      for (Symbol c : b.raw_t) w.put_bits(c, width);
      return;
    case BlockMode::kBcZero: write_alignments(w, b, g, index, width); return;
    case BlockMode::kGeneral:
    case BlockMode::kPeriodic:
      write_alignments(w, b, g, index, width);
      write_cover(w, b, width);
      return;
  }
}

// Alignments use window coordinates; the window has length r - ell.
void read_alignments(BitReader& rd, BlockSketch& b, const SketchHeader& h, const BlockGeometry& g, Pos index,
                     unsigned width) {
  const Symbol sigma = static_cast<Symbol>(h.alphabet.size());
  const Pos m = h.m;
  b.ell = g.begin(index) + static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(g.n)));
  const Pos nw = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(g.window)));
  b.r = b.ell + nw;
  if (b.r > g.n) throw CorruptSketch("window beyond the text");
  const Pos max_cost = m + nw;
  const auto na = rd.get_gamma_at_most(rd.remaining());
  const auto nb = rd.get_gamma_at_most(rd.remaining());
  b.x_pref = {0, 0, 0, decode_edit_info(rd, {0, 0}, width, sigma, max_cost)};
  EditInfo suf = decode_edit_info(rd, {0, 0}, width, sigma, max_cost);
  const Pos y_suf = nw - (m + count_op(suf, Op::kInsert) - count_op(suf, Op::kDelete));
  if (y_suf < 0) throw CorruptSketch("suffix alignment does not fit");
  for (auto& e : suf) e.y += y_suf;
  b.x_suf = {0, 0, y_suf, std::move(suf)};
  for (std::uint64_t i = 0; i < na; ++i) {
    AlignmentRecord a;
    a.y = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(nw)));
    a.info = decode_edit_info(rd, {0, a.y}, width, sigma, max_cost);
    b.a_list.push_back(std::move(a));
  }
  for (std::uint64_t i = 0; i < nb; ++i) {
    AlignmentRecord a;
    a.x = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(m)));
    a.x_len = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(m - a.x)));
    a.y = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(nw)));
    a.info = decode_edit_info(rd, {a.x, a.y}, width, sigma, max_cost);
    b.b_list.push_back(std::move(a));
  }
}

void read_cover(BitReader& rd, BlockSketch& b, const SketchHeader& h, unsigned width) {
  const Symbol sigma = static_cast<Symbol>(h.alphabet.size());
  const Pos nw = b.r - b.ell;
  const auto count = rd.get_gamma_at_most(rd.remaining());
  Pos prev = -1;
  for (std::uint64_t i = 0; i < count; ++i) {
    CoverRun run;
    run.a = prev + 1 + static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(h.m)));
    run.b = run.a + static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(h.m)));
    const Pos len = static_cast<Pos>(rd.get_gamma_at_most(static_cast<std::uint64_t>(nw)));
    run.chars = decode_phrases(rd, len, width, sigma);
    prev = run.b;
    b.runs.push_back(std::move(run));
  }
}

BlockSketch read_payload(BitReader& rd, BlockMode mode, const SketchHeader& h, const BlockGeometry& g, Pos index,
                         unsigned width) {
  BlockSketch b;
  b.mode = mode;
  const Symbol sigma = static_cast<Symbol>(h.alphabet.size());
  switch (mode) {
    case BlockMode::kEmpty: break;
    case BlockMode::kRaw:
      if (static_cast<std::uint64_t>(h.m + h.n) * width > rd.remaining()) throw StreamUnderflow();
      for (Pos i = 0; i < h.m; ++i) b.raw_p.push_back(read_symbol(rd, width, sigma));
      for (Pos i = 0; i < h.n; ++i) b.raw_t.push_back(read_symbol(rd, width, sigma));
      break;
    case BlockMode::kBcZero:
      if (g.step < 1) throw CorruptSketch("block geometry undefined");
      read_alignments(rd, b, h, g, index, width);
      break;
    case BlockMode::kGeneral:
    case BlockMode::kPeriodic:
      if (g.step < 1) throw CorruptSketch("block geometry undefined");
      read_alignments(rd, b, h, g, index, width);
      read_cover(rd, b, h, width);
      break;
  }
  return b;
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

}  // namespace

std::vector<std::uint8_t> serialize_sketch(const Sketch& s, SizeReport* report) {
  const SketchHeader& h = s.header;
  const unsigned width = symbol_width(h.alphabet.size());
  const BlockGeometry g = block_geometry(h.n, h.m, h.k);
  BitWriter w;
  for (std::uint8_t c : kMagic) w.put_bits(c, 8);
  w.put_bits(kVersion, 8);
  put_pos(w, h.n);
  put_pos(w, h.m);
  put_pos(w, h.k);
  w.put_gamma(h.alphabet.size());
  for (std::uint8_t c : h.alphabet.table) w.put_bits(c, 8);
  w.put_gamma(s.blocks.size());
  w.pad_to_byte();
  SizeReport rep;
  rep.header_bits = w.bit_length();
  rep.alphabet_bits = 8 * h.alphabet.size();
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const BlockSketch& b = s.blocks[i];
    BitWriter payload;
    write_payload(payload, b, h, g, static_cast<Pos>(i), width);
    const std::uint64_t before = w.bit_length();
    w.put_bits(static_cast<std::uint64_t>(b.mode), kTagBits);
    w.put_gamma(payload.bit_length());
    w.append(payload);
    w.pad_to_byte();
    rep.block_bits.push_back(w.bit_length() - before);
  }
  std::vector<std::uint8_t> out = w.bytes();
  const std::uint32_t crc = crc32(out);
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(crc >> shift));
  rep.crc_bits = 32;
  rep.total_bits = out.size() * 8;
  if (report) *report = rep;
  return out;
}

Sketch deserialize_sketch(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 9) throw StreamUnderflow();
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw UnsupportedFormat("bad magic");
  if (bytes[4] != kVersion) throw UnsupportedFormat("unsupported version");
  const auto body = bytes.first(bytes.size() - 4);
  std::uint32_t stored = 0;
  for (std::size_t i = bytes.size() - 4; i < bytes.size(); ++i) stored = (stored << 8) | bytes[i];
  if (crc32(body) != stored) throw CorruptSketch("checksum mismatch");

  BitReader rd(body, 40, body.size() * 8);
  Sketch s;
  SketchHeader& h = s.header;
  const std::uint64_t limit = std::uint64_t{1} << 48;
  h.n = static_cast<Pos>(rd.get_gamma_at_most(limit));
  h.m = static_cast<Pos>(rd.get_gamma_at_most(limit));
  h.k = static_cast<Pos>(rd.get_gamma_at_most(limit));
  const auto sigma = rd.get_gamma_at_most(256);
  for (std::uint64_t i = 0; i < sigma; ++i) {
    const auto c = static_cast<std::uint8_t>(rd.get_bits(8));
    if (!h.alphabet.table.empty() && c <= h.alphabet.table.back()) throw CorruptSketch("alphabet not increasing");
    h.alphabet.table.push_back(c);
  }
  if (sigma == 0) throw CorruptSketch("empty alphabet");
  const auto count = rd.get_gamma_at_most(rd.remaining());
  rd.skip_padding();
  const unsigned width = symbol_width(h.alphabet.size());
  const BlockGeometry g = block_geometry(h.n, h.m, h.k);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto tag = rd.get_bits(kTagBits);
    if (tag > 4) throw CorruptSketch("bad block tag");
    const auto len = rd.get_gamma_at_most(rd.remaining());
    const std::uint64_t start = rd.position();
    BitReader sub(body, start, start + len);
    BlockSketch b = read_payload(sub, static_cast<BlockMode>(tag), h, g, static_cast<Pos>(i), width);
    if (sub.remaining() != 0) throw CorruptSketch("block payload length mismatch");
    for (std::uint64_t j = 0; j < len; ++j) rd.get_bit();
    rd.skip_padding();
    s.blocks.push_back(std::move(b));
  }
  if (rd.remaining() != 0) throw CorruptSketch("trailing bytes");
  return s;
}

}  // namespace pmwe
