#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "pmwe/decoder.hpp"
#include "pmwe/lower_bound.hpp"

namespace py = pybind11;
using namespace pmwe;

namespace {

// Edit tuples with symbols mapped back to raw bytes; None marks epsilon.
py::list edits_to_py(const EditInfo& info, const Alphabet& ab) {
  py::list out;
  auto sym = [&](Symbol c) -> py::object {
    if (c == kEps) return py::none();
    return py::int_(ab.table.at(c));
  };
  for (const auto& e : info) out.append(py::make_tuple(e.x, sym(e.cx), e.y, sym(e.cy)));
  return out;
}

py::list report_to_py(const OccurrenceReport& rep, const Alphabet& ab) {
  py::list out;
  for (const auto& o : rep.occurrences) {
    py::dict d;
    d["t"] = o.t;
    d["t_end"] = o.t_end;
    d["dist"] = o.dist;
    d["truncated"] = o.truncated;
    py::list infos;
    for (const auto& info : o.edit_infos) infos.append(edits_to_py(info, ab));
    d["edit_infos"] = infos;
    out.append(d);
  }
  return out;
}

std::string view(const py::bytes& b) { return std::string(b); }

}  // namespace

PYBIND11_MODULE(pmwe_py, m) {
  m.doc() = "Sketches for pattern matching with edits";

  py::register_exception<CorruptSketch>(m, "CorruptSketch", PyExc_ValueError);
  py::register_exception<ProtocolMisuse>(m, "ProtocolMisuse", PyExc_ValueError);

  m.def(
      "encode",
      [](py::bytes p, py::bytes t, Pos k, const std::string& raw_policy, unsigned jobs) {
        EncoderOptions opt;
        if (raw_policy == "strict") opt.raw_policy = RawPolicy::kStrict;
        else if (raw_policy != "structural") throw std::invalid_argument("raw_policy must be 'structural' or 'strict'");
        opt.jobs = jobs;
        std::vector<std::uint8_t> bytes;
        {
          py::gil_scoped_release release;
          bytes = serialize_sketch(encode(view(p), view(t), k, opt));
        }
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("pattern"), py::arg("text"), py::arg("k"), py::arg("raw_policy") = "structural", py::arg("jobs") = 1);

  m.def(
      "decode",
      [](py::bytes sketch, std::size_t cap) {
        const std::string raw = sketch;
        const Sketch s = deserialize_sketch(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
        OccurrenceReport rep;
        {
          py::gil_scoped_release release;
          rep = decode(s, cap);
        }
        return report_to_py(rep, s.header.alphabet);
      },
      py::arg("sketch"), py::arg("cap") = kDefaultCap);

  m.def(
      "find_occurrences",
      [](py::bytes p, py::bytes t, Pos k, std::size_t cap) {
        const Alphabet ab = Alphabet::from_bytes(view(p), view(t));
        return report_to_py(find_occurrences(ab.encode(view(p)), ab.encode(view(t)), k, cap), ab);
      },
      py::arg("pattern"), py::arg("text"), py::arg("k"), py::arg("cap") = kDefaultCap);

  m.def(
      "sketch_size",
      [](py::bytes sketch) {
        const std::string raw = sketch;
        const Sketch s = deserialize_sketch(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
        SizeReport rep;
        serialize_sketch(s, &rep);
        py::dict d;
        d["header_bits"] = rep.header_bits;
        d["payload_bits"] = rep.payload_bits();
        d["crc_bits"] = rep.crc_bits;
        d["total_bits"] = rep.total_bits;
        d["blocks"] = s.blocks.size();
        return d;
      },
      py::arg("sketch"));

  m.def("edit_distance", [](py::bytes a, py::bytes b) {
    const Alphabet ab = Alphabet::from_bytes(view(a), view(b));
    return edit_distance(ab.encode(view(a)), ab.encode(view(b)));
  });
  m.def("self_edit_distance", [](py::bytes x) {
    return self_edit_distance_value(Alphabet::from_bytes(view(x), "").encode(view(x)));
  });
  m.def("entropy_bound_bits", &entropy_bound_bits, py::arg("m"), py::arg("n"), py::arg("k"), py::arg("sigma"));
  m.def(
      "generate_adversarial",
      [](Pos m_, Pos n, Pos k, Pos sigma, std::uint64_t seed) {
        const AdversarialInstance a = generate_adversarial(m_, n, k, sigma, seed);
        return py::make_tuple(py::bytes(a.p_bytes()), py::bytes(a.t_bytes()));
      },
      py::arg("m"), py::arg("n"), py::arg("k"), py::arg("sigma"), py::arg("seed"));
}
