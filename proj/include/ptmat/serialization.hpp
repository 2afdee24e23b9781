#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ptmat/complex_matrix.hpp"
#include "ptmat/construction.hpp"
#include "ptmat/dynamics.hpp"
#include "ptmat/spectral.hpp"

namespace ptmat::io {

using Json = nlohmann::ordered_json;

/// Locale-independent rendering with 17 significant digits.
/// Non-finite values render as "null".
std::string format_double(double x);

/// Serialises a JSON tree with keys in insertion order, two-space indentation,
/// arrays without nested objects kept on one line, and every floating-point
/// value printed through format_double.
std::string dump(const Json& j);

// {"dim": D, "entries": [[re, im], ...]} in row-major order.
Json to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j);

// [[row], [row], ...]
Json to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

// {"signature": [m_plus, m_minus], "angles": [...]}
Json to_json(const ParitySpec& spec);
ParitySpec parity_spec_from_json(const Json& j);

// {"A": [[...]], "B": [[...]], "C": [[...]]}
Json to_json(const BlockForm& blocks);
BlockForm block_form_from_json(const Json& j);

// {"h": ..., "p": ..., "provenance": {"parity": ..., "blocks": ..., "coupling": g}, "seed": n}
Json to_json(const PTSystem& sys);

/// h, p and provenance as stored, without the PTSystem invariant checks. Used
/// for fixtures whose Hamiltonian is deliberately not symmetric.
struct SystemRecord {
  ComplexMatrix h;
  ComplexMatrix p;
  Provenance provenance;
};
SystemRecord system_record_from_json(const Json& j);
PTSystem pt_system_from_json(const Json& j, double tol = kDefaultTol);

// {"eigenvalues": [[re, im], ...], "residuals": [...], "phase": "...",
//  "real_count": n, "conjugate_pairs": n, "pt_norm_signs": [...] | null}
Json to_json(const SpectralData& data);

/// Header "t,re_inner,im_inner", one row per sample, LF line endings.
void write_trace_csv(std::ostream& out, const EvolutionTrace& trace);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ptmat::io
