#include "ptmat/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ptmat/errors.hpp"

namespace ptmat::io {

namespace {

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

bool is_flat(const Json& j) {
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array() && !is_flat(e)) return false;
  }
  return true;
}

void dump_into(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_into(out, it.value(), depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (is_flat(j)) {
        out += "[";
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          dump_into(out, e, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_into(out, e, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string("JSON: missing key \"") + key + "\"");
  }
  return j.at(key);
}

double as_double(const Json& j) {
  if (!j.is_number()) throw InvalidArgument("JSON: expected a number");
  return j.get<double>();
}

std::size_t as_size(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw InvalidArgument("JSON: expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string dump(const Json& j) {
  std::string out;
  dump_into(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(complex_pair(z));
  Json j;
  j["dim"] = m.dim();
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  const std::size_t dim = as_size(require(j, "dim"));
  const Json& entries = require(j, "entries");
  if (!entries.is_array() || entries.size() != dim * dim) {
    throw InvalidArgument("ComplexMatrix JSON: entries must hold dim^2 pairs");
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2) throw InvalidArgument("ComplexMatrix JSON: entry is not [re, im]");
    values.emplace_back(as_double(e[0]), as_double(e[1]));
  }
  return ComplexMatrix(dim, std::move(values));
}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) throw InvalidArgument("block JSON: expected an array of rows");
  // A block with no columns may be written either as [] or as `rows` empty rows.
  if (j.empty() && rows * cols == 0) return RealMatrix(rows, cols);
  if (j.size() != rows) throw InvalidArgument("block JSON: wrong number of rows");
  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InvalidArgument("block JSON: wrong row length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = as_double(j[i][k]);
  }
  return m;
}

Json to_json(const ParitySpec& spec) {
  Json j;
  j["signature"] = Json::array({spec.signature.plus, spec.signature.minus});
  j["angles"] = spec.angles;
  return j;
}

ParitySpec parity_spec_from_json(const Json& j) {
  const Json& sig = require(j, "signature");
  if (!sig.is_array() || sig.size() != 2) throw InvalidArgument("ParitySpec JSON: signature must be [m+, m-]");
  ParitySpec spec;
  spec.signature = {as_size(sig[0]), as_size(sig[1])};
  for (const auto& a : require(j, "angles")) spec.angles.push_back(as_double(a));
  return spec;
}

Json to_json(const BlockForm& blocks) {
  Json j;
  j["A"] = to_json(blocks.a);
  j["B"] = to_json(blocks.b);
  j["C"] = to_json(blocks.c);
  return j;
}

BlockForm block_form_from_json(const Json& j) {
  const Json& a = require(j, "A");
  const Json& c = require(j, "C");
  if (!a.is_array() || !c.is_array()) throw InvalidArgument("BlockForm JSON: A and C must be arrays");
  const std::size_t mp = a.size();
  const std::size_t mm = c.size();
  BlockForm blocks;
  blocks.a = real_matrix_from_json(a, mp, mp);
  blocks.b = real_matrix_from_json(require(j, "B"), mp, mm);
  blocks.c = real_matrix_from_json(c, mm, mm);
  return blocks;
}

Json to_json(const PTSystem& sys) {
  Json j;
  j["h"] = to_json(sys.h());
  j["p"] = to_json(sys.p());
  Json prov = Json::object();
  const Provenance& p = sys.provenance();
  if (p.parity) prov["parity"] = to_json(*p.parity);
  if (p.blocks) prov["blocks"] = to_json(*p.blocks);
  if (p.coupling) prov["coupling"] = *p.coupling;
  j["provenance"] = std::move(prov);
  j["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
  return j;
}

SystemRecord system_record_from_json(const Json& j) {
  SystemRecord rec{complex_matrix_from_json(require(j, "h")), complex_matrix_from_json(require(j, "p")), {}};
  if (j.contains("provenance") && j.at("provenance").is_object()) {
    const Json& prov = j.at("provenance");
    if (prov.contains("parity")) rec.provenance.parity = parity_spec_from_json(prov.at("parity"));
    if (prov.contains("blocks")) rec.provenance.blocks = block_form_from_json(prov.at("blocks"));
    if (prov.contains("coupling")) rec.provenance.coupling = as_double(prov.at("coupling"));
  }
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_integer()) throw InvalidArgument("PTSystem JSON: seed must be an integer");
    rec.provenance.seed = j.at("seed").get<std::uint64_t>();
  }
  return rec;
}

PTSystem pt_system_from_json(const Json& j, double tol) {
  SystemRecord rec = system_record_from_json(j);
  return PTSystem(std::move(rec.h), std::move(rec.p), std::move(rec.provenance), tol);
}

Json to_json(const SpectralData& data) {
  Json values = Json::array();
  Json residuals = Json::array();
  for (const auto& pair : data.pairs) {
    values.push_back(complex_pair(pair.value));
    residuals.push_back(pair.residual);
  }
  Json j;
  j["eigenvalues"] = std::move(values);
  j["residuals"] = std::move(residuals);
  j["phase"] = to_string(data.phase);
  j["real_count"] = data.real_count;
  j["conjugate_pairs"] = data.conjugate_pairs;
  j["pt_norm_signs"] = data.phase == Phase::Unbroken ? Json(data.pt_norm_signs) : Json(nullptr);
  j["min_self_overlap"] = data.min_self_overlap;
  return j;
}

void write_trace_csv(std::ostream& out, const EvolutionTrace& trace) {
  out << "t,re_inner,im_inner\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_double(trace.times[k]) << ',' << format_double(trace.inner_products[k].real()) << ','
        << format_double(trace.inner_products[k].imag()) << '\n';
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
  if (!out) throw InvalidArgument("failed writing " + path);
}

}  // namespace ptmat::io
