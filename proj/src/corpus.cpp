#include "xmod/io.hpp"

#include <algorithm>

namespace xmod {

namespace {

// S3 elements are the permutations of {0,1,2} in lexicographic order:
// 0 id, 1 (0 2 1), 2 (1 0 2), 3 (1 2 0), 4 (2 0 1), 5 (2 1 0); A3 = {0, 3, 4}.
const char* const kDescriptors[] = {
    R"({"name": "degenerate-s3-z2-sign",
        "description": "(S3, Z/2, trivial boundary) on C with u the sign: the crossed product is zero",
        "crossed_module": {"G": {"symmetric": 3}, "H": {"cyclic": 2}, "boundary": [0, 0]},
        "action": {"kind": "scalar", "character": [1, -1]},
        "extension": {"kind": "kernel"}})",
    R"({"name": "decomposition-s3-z3z2",
        "description": "S3 with H = Z/3 x Z/2, boundary onto A3, odd permutations inverting Z/3; regular inner action",
        "crossed_module": {"G": {"symmetric": 3}, "H": {"product": [{"cyclic": 3}, {"cyclic": 2}]},
                           "boundary": [0, 0, 3, 3, 4, 4],
                           "conj": [[0,1,2,3,4,5], [0,1,4,5,2,3], [0,1,4,5,2,3], [0,1,2,3,4,5], [0,1,2,3,4,5], [0,1,4,5,2,3]]},
        "action": {"kind": "inner", "representation": "regular"},
        "extension": {"kind": "kernel"}})",
    R"({"name": "decomposition-z4-v4-matrix",
        "description": "(Z/4, Z/2 x Z/2, (a,b) -> 2a) on M4, u twisted by (-1)^a",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"product": [{"cyclic": 2}, {"cyclic": 2}]}, "boundary": [0, 0, 2, 2]},
        "action": {"kind": "inner", "representation": "regular", "character": [1, 1, -1, -1]},
        "extension": {"kind": "kernel"}})",
    R"({"name": "decomposition-z4-v4-scalar",
        "description": "(Z/4, Z/2 x Z/2, (a,b) -> 2a) on C with u = (-1)^a",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"product": [{"cyclic": 2}, {"cyclic": 2}]}, "boundary": [0, 0, 2, 2]},
        "action": {"kind": "scalar", "character": [1, 1, -1, -1]},
        "extension": {"kind": "image"}})",
    R"({"name": "decomposition-z4-z4",
        "description": "(Z/4, Z/4, times 2) on M4, u twisted by (-1)^h",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"cyclic": 4}, "boundary": [0, 2, 0, 2]},
        "action": {"kind": "inner", "representation": "regular", "character": [1, -1, 1, -1]},
        "extension": {"kind": "image"}})",
    R"({"name": "decomposition-z4-z4z2-translation",
        "description": "(Z/4, Z/4 x Z/2, (a,b) -> 2a) translating functions on Z/2 through g mod 2",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"product": [{"cyclic": 4}, {"cyclic": 2}]},
                           "boundary": [0, 0, 2, 2, 0, 0, 2, 2]},
        "action": {"kind": "translation", "target": {"cyclic": 2}, "map": [0, 1, 0, 1]},
        "extension": {"kind": "kernel"}})",
    R"({"name": "enlarge-v4-z2",
        "description": "(Z/2 x Z/2, Z/2, h -> (0,h)) translating functions on the cokernel",
        "crossed_module": {"G": {"product": [{"cyclic": 2}, {"cyclic": 2}]}, "H": {"cyclic": 2}, "boundary": [0, 1]},
        "action": {"kind": "translation", "target": {"cyclic": 2}, "map": [0, 0, 1, 1]},
        "extension": {"kind": "image"},
        "equivalences": [{"kind": "identity"}, {"kind": "enlarge", "G1": [0, 2]}, {"kind": "quotient", "N": [0, 1]}]})",
    R"({"name": "example-semidirect-z4-z2",
        "description": "semidirect extension (H,1) -> (G x| H, H) -> C of (Z/4, Z/2, times 2); Z/4 acts on M4 by the regular representation",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"cyclic": 2}, "boundary": [0, 2]},
        "action": {"kind": "inner", "representation": "regular"},
        "extension": {"kind": "semidirect", "pullback": "group"}})",
    R"({"name": "finite-torus-2",
        "description": "gauge action of (Z/2, Z/2, id) on the clock and shift algebra M2",
        "crossed_module": {"G": {"cyclic": 2}, "H": {"cyclic": 2}, "boundary": [0, 1]},
        "action": {"kind": "finite_torus", "n": 2},
        "extension": {"kind": "semidirect", "pullback": "projection"},
        "equivalences": [{"kind": "identity"}, {"kind": "quotient", "N": [0, 1]}]})",
    R"({"name": "finite-torus-3",
        "description": "gauge action of (Z/3, Z/3, id) on M3",
        "crossed_module": {"G": {"cyclic": 3}, "H": {"cyclic": 3}, "boundary": [0, 1, 2]},
        "action": {"kind": "finite_torus", "n": 3},
        "extension": {"kind": "image"},
        "equivalences": [{"kind": "quotient", "N": [0, 1, 2]}]})",
    R"({"name": "finite-torus-4",
        "description": "gauge action of (Z/4, Z/4, id) on M4",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"cyclic": 4}, "boundary": [0, 1, 2, 3]},
        "action": {"kind": "finite_torus", "n": 4},
        "extension": {"kind": "kernel"},
        "equivalences": [{"kind": "quotient", "N": [0, 2]}]})",
    R"({"name": "green-s3-a3",
        "description": "normal subgroup A3 of S3 acting trivially on C",
        "crossed_module": {"kind": "group", "G": {"symmetric": 3}},
        "algebra": {"kind": "complex"},
        "action": {"kind": "trivial"},
        "extension": {"kind": "normal_subgroup", "N": [0, 3, 4]},
        "equivalences": [{"kind": "identity"}]})",
    R"({"name": "green-z4-z2",
        "description": "normal subgroup {0, 2} of Z/4 translating functions on Z/4",
        "crossed_module": {"kind": "group", "G": {"cyclic": 4}},
        "action": {"kind": "translation", "target": {"cyclic": 4}, "map": [0, 1, 2, 3]},
        "extension": {"kind": "normal_subgroup", "N": [0, 2]},
        "equivalences": [{"kind": "identity"}, {"kind": "enlarge", "G1": [0, 1, 2, 3]}]})",
    R"({"name": "group-z3-translation",
        "description": "Z/3 translating functions on itself",
        "crossed_module": {"kind": "group", "G": {"cyclic": 3}},
        "action": {"kind": "translation", "target": {"cyclic": 3}, "map": [0, 1, 2]},
        "extension": {"kind": "trivial"},
        "equivalences": [{"kind": "identity"}]})",
    R"({"name": "kernel-z3-characters",
        "description": "(1, Z/3) on functions on three points, u_h the characters",
        "crossed_module": {"kind": "kernel", "H": {"cyclic": 3}},
        "algebra": {"kind": "functions", "n": 3},
        "action": {"kind": "explicit",
                   "alpha": [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]],
                   "u": [[1, 1, 1],
                         [1, [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386]],
                         [1, [-0.5, -0.8660254037844386], [-0.5, 0.8660254037844386]]]},
        "extension": {"kind": "kernel"},
        "equivalences": [{"kind": "identity"}]})",
    R"({"name": "thin-z3-inner",
        "description": "(Z/3, Z/3, id) on M3 by the regular representation",
        "crossed_module": {"kind": "identity", "G": {"cyclic": 3}},
        "action": {"kind": "inner", "representation": "regular"},
        "extension": {"kind": "image"},
        "equivalences": [{"kind": "identity"}, {"kind": "quotient", "N": [0, 1, 2]}]})",
    R"({"name": "times-two-z4-z2",
        "description": "(Z/4, Z/2, times 2) on M4 by the regular representation",
        "crossed_module": {"G": {"cyclic": 4}, "H": {"cyclic": 2}, "boundary": [0, 2]},
        "action": {"kind": "inner", "representation": "regular"},
        "extension": {"kind": "kernel"},
        "equivalences": [{"kind": "identity"}, {"kind": "quotient", "N": [0, 1]}]})",
    R"({"name": "two-abelian-s3-z2",
        "description": "(S3, Z/2, trivial boundary): non-Abelian G acting trivially on functions on two points, u the diagonal unitary diag(1, -1) at the generator of H",
        "crossed_module": {"G": {"symmetric": 3}, "H": {"cyclic": 2}, "boundary": [0, 0]},
        "algebra": {"kind": "functions", "n": 2},
        "action": {"kind": "explicit",
                   "alpha": [[[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]],
                             [[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]],
                   "u": [[1, 1], [1, -1]]},
        "extension": {"kind": "kernel"},
        "equivalences": [{"kind": "identity"}]})",
};

}  // namespace

const std::vector<Json>& bundled_corpus_descriptors() {
  static const std::vector<Json> all = [] {
    std::vector<Json> v;
    for (const char* text : kDescriptors) {
      Json j = {{"schema", 1}};
      j.update(Json::parse(text));
      v.push_back(std::move(j));
    }
    std::sort(v.begin(), v.end(), [](const Json& a, const Json& b) { return a["name"] < b["name"]; });
    return v;
  }();
  return all;
}

}  // namespace xmod
