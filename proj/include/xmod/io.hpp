#pragma once

#include "xmod/decomposition.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace xmod {

using Json = nlohmann::ordered_json;

/// Descriptor parsers. Schema problems raise ParseError with a JSON pointer
/// to the offending field; mathematically invalid input raises the error of
/// the validating constructor.
FiniteGroup parse_group(const Json& j, const std::string& where = "");
CrossedModule parse_crossed_module(const Json& j, const std::string& where = "");
StarAlgebra parse_algebra(const Json& j, const std::string& where = "");
cplx parse_complex(const Json& j, const std::string& where = "");

/// A parsed instance document.
struct Instance {
  std::string name;
  Json descriptor;
  CrossedModule C;
  std::optional<StrictAction> action;

  struct Extension {
    std::string kind;
    StrictExtension ext;
    StrictAction action;  ///< of ext.C2
  };
  std::optional<Extension> extension;

  struct Equivalence {
    std::string kind;  ///< identity, quotient or enlarge
    CrossedModuleHom hom;
    std::optional<QuotientEquivalence> quotient;
    std::optional<Enlargement> enlargement;
  };
  std::vector<Equivalence> equivalences;
};

Instance parse_instance(const Json& j);
/// Errors: ParseError for unreadable files and malformed JSON (with line and column).
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

/// Named descriptors shipped with the library, ordered by name.
const std::vector<Json>& bundled_corpus_descriptors();
std::vector<Instance> bundled_corpus();

}  // namespace xmod
