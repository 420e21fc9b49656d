#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "conicstab/cones.hpp"
#include "conicstab/determinantal.hpp"
#include "conicstab/poly.hpp"
#include "conicstab/stability.hpp"

namespace conicstab::io {

using json = nlohmann::json;

// {"vars": [...], "terms": [{"exp": [...], "re": r, "im": s}, ...]}
json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const json& j, const ToleranceProfile& tol = {});

// {"type": "orthant", "n": 3} | {"type": "polyhedral", "generators": [...]}
// | {"type": "psd", "n": 2} | {"type": "product", "factors": [...]}
json to_json(const Cone& k);
Cone cone_from_json(const json& j);

// Mini-syntax: orthant:n, psd:n, poly:@file.json, prod:spec,spec,...
// Relative file paths resolve against base_dir.
Cone parse_cone_spec(std::string_view spec, const std::filesystem::path& base_dir = {});

// Dense matrix as an array of rows; entries are numbers or [re, im] pairs.
json to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const json& j);

// {"n": 2, "d": 2, "blocks": [[block, block], [block, block]], "re_im": bool}
// with every block a dense matrix. "re_im" marks [re, im] entries on output;
// input accepts either form.
json to_json(const BlockMatrix& a);
BlockMatrix block_matrix_from_json(const json& j);

json to_json(const Verdict& v);

json read_json_file(const std::filesystem::path& path);

}  // namespace conicstab::io
