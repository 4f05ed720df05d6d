#pragma once

#include <optional>
#include <string>

#include "pscl/structure.hpp"

namespace pscl {

/// A parsed model file: the evolution model, the (q,r,A,B,C) data, an
/// optional raw f-table, and an optional named exact solution.
///
/// File format (UTF-8 text, `#` comments):
///   [model]
///   field = q
///   evolution = -6*q^2*q_x - q_xxx
///   constraint r = -q
///   constraint u_x = 2*q        # base rules, prolonged automatically
///   trig_dx u = u_x             # D_x sin(u) = cos(u) * u_x
///   trig_dt u = ...             # optional
///   [qr]
///   q = ...   r = ...   A = ...   B = ...   C = ...
///   [f]
///   f11 = ...  ...  f32 = ...   # optional raw FTable
///   [solution]
///   name = mkdv-soliton
///   amplitude = 1
struct ModelSpec {
    std::string name;  // basename of the file
    EvolutionModel model;
    QRModel qr;
    std::optional<FTable> ftable;
    std::optional<std::string> solution;
    double amplitude = 1.0;
};

struct ModelFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ModelSpec parse_model_text(const std::string& text, const std::string& name);
ModelSpec load_model_file(const std::string& path);

}  // namespace pscl
