#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pmwe/strings.hpp"

namespace pmwe {

class BitWriter {
 public:
  void put_bit(bool b);
  void put_bits(std::uint64_t value, unsigned width);
  void put_gamma(std::uint64_t v);  // Elias gamma of v + 1
  void pad_to_byte();
  void append(const BitWriter& other);

  std::uint64_t bit_length() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_begin, std::uint64_t bit_end);
  explicit BitReader(std::span<const std::uint8_t> bytes) : BitReader(bytes, 0, bytes.size() * 8) {}

  bool get_bit();
  std::uint64_t get_bits(unsigned width);
  std::uint64_t get_gamma();
  // Gamma value that must not exceed `max`.
  std::uint64_t get_gamma_at_most(std::uint64_t max);
  // Skips to the next byte boundary; the skipped bits must be zero.
  void skip_padding();

  std::uint64_t position() const { return pos_; }
  std::uint64_t remaining() const { return end_ - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t pos_;
  std::uint64_t end_;
};

unsigned gamma_length(std::uint64_t v);

// Edits are written relative to `start`: per tuple the number of matches since
// the previous edit, a 2-bit op and the characters of the non-empty sides.
void encode_edit_info(BitWriter& w, const EditInfo& info, Point start, unsigned width);
EditInfo decode_edit_info(BitReader& r, Point start, unsigned width, Symbol sigma, Pos max_cost);

// Left-to-right factorization read off an optimal self-alignment.
struct Phrase {
  bool copy = false;
  Symbol literal = 0;
  Pos delta = 0;  // copy source is `delta` characters to the left
  Pos length = 0;
  bool operator==(const Phrase&) const = default;
};

std::vector<Phrase> factorize(View x);
Str replay(const std::vector<Phrase>& phrases);

void encode_phrases(BitWriter& w, const Str& chars, unsigned width);
Str decode_phrases(BitReader& r, Pos length, unsigned width, Symbol sigma);

enum class BlockMode : std::uint8_t { kEmpty = 0, kRaw = 1, kBcZero = 2, kGeneral = 3, kPeriodic = 4 };

std::string to_string(BlockMode mode);

struct AlignmentRecord {
  Pos x = 0;
  Pos x_len = 0;  // B alignments only
  Pos y = 0;
  EditInfo info;  // absolute window coordinates
  bool operator==(const AlignmentRecord&) const = default;
};

struct CoverRun {
  Pos a = 0;
  Pos b = 0;
  Str chars;  // T[tau(a)..tau(b)]
  bool operator==(const CoverRun&) const = default;
};

struct BlockSketch {
  BlockMode mode = BlockMode::kEmpty;
  Pos ell = 0;  // trimmed window T[ell..r)
  Pos r = 0;
  AlignmentRecord x_pref;
  AlignmentRecord x_suf;
  std::vector<AlignmentRecord> a_list;
  std::vector<AlignmentRecord> b_list;
  std::vector<CoverRun> runs;
  Str raw_p;  // RAW only
  Str raw_t;
  bool operator==(const BlockSketch&) const = default;
};

struct SketchHeader {
  Pos n = 0;
  Pos m = 0;
  Pos k = 0;
  Alphabet alphabet;
  bool operator==(const SketchHeader&) const = default;
};

struct Sketch {
  SketchHeader header;
  std::vector<BlockSketch> blocks;
  bool operator==(const Sketch&) const = default;
};

// Geometry shared by encoder and decoder.
struct BlockGeometry {
  Pos m = 0;       // pattern length
  Pos n = 0;       // normalized text length
  Pos k = 0;       // normalized threshold, in [1, m]
  Pos pad = 0;     // leading zero symbols added to T
  Pos step = 0;    // block length ceil(m/3) - k
  Pos window = 0;  // ceil(4m/3)
  Pos count = 0;

  Pos begin(Pos i) const { return i * step; }
};

BlockGeometry block_geometry(Pos n, Pos m, Pos k);

struct SizeReport {
  std::uint64_t header_bits = 0;  // includes the alphabet table
  std::uint64_t alphabet_bits = 0;
  std::vector<std::uint64_t> block_bits;  // tag, length prefix, payload and padding
  std::uint64_t crc_bits = 0;
  std::uint64_t total_bits = 0;

  std::uint64_t payload_bits() const;
};

std::vector<std::uint8_t> serialize_sketch(const Sketch& s, SizeReport* report = nullptr);
Sketch deserialize_sketch(std::span<const std::uint8_t> bytes);

}  // namespace pmwe
