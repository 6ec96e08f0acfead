#pragma once

#include <string>
#include <vector>

#include "mcf/bilinear.h"
#include "mcf/exactnum.h"
#include "mcf/matrix.h"
#include "mcf/mcf.h"
#include "mcf/mobius.h"

namespace mcf {

// JSON encodings. Integers may be JSON numbers or decimal strings (for values
// beyond 64 bits); writers emit strings only when a value does not fit.
//
// MCF:    {"m": 2, "preperiod": [[1],[1]], "period": [[1,2],[0,1]]}
//         outer arrays indexed by component, inner by step; "period" optional.
// Matrix: [[3,0,0],[0,-2,0],[0,0,6]] row-major.
// Forms:  [C1, C2, ..., C_{m+1}], each a matrix as above.
// All parsers throw std::invalid_argument with a description of the problem.
Mcf parse_mcf_json(const std::string& text);
std::string mcf_to_json(const Mcf& mcf);
// A finite MCF made of the given tuples (how engine outputs are written).
std::string tuples_to_json(const std::vector<Tuple>& tuples, std::size_t m);
std::vector<Tuple> tuples_from_json(const std::string& text);

Matrix parse_matrix_json(const std::string& text);
std::string matrix_to_json(const Matrix& c);

FormFamily parse_forms_json(const std::string& text);
std::string forms_to_json(const FormFamily& f);

// One tuple per line: "n: (a1,...,am)".
std::string tuples_to_text(const std::vector<Tuple>& tuples);
std::vector<Tuple> tuples_from_text(const std::string& text);

// step,kind,inputs_so_far,outputs_so_far[,max_entry_bits]
std::string steps_csv(const StepLog& log, bool with_bits);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace mcf
