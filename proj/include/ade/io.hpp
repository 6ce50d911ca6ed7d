#pragma once

// JSON (de)serialization of the engine's objects.  One schema serves the whole
// toolchain: a document is a single JSON object with top-level keys
//
//   base        {vars, truncation, relations: [exponent vectors]}
//   category    {grading, k_max, complete?, objects, homs, identities, products}
//   deformation {k_max?, complete?, products_q, curvature}          (optional)
//   twisted     [{name, summands, delta}]                           (optional)
//   gauge       {degree, a_max, components0, components}            (optional)
//
// Every scalar coefficient is either a rational string ("3/2") or a polynomial
// array [{coeff, exponents}]; values over a hom basis are arrays of
// {coeff, name}.  Product tables list inputs in written order (a_k first);
// `products_q` stores the full deformed value on each listed tuple, and
// unlisted tuples default to the reference product.  Emission is deterministic
// byte for byte (fixed key order, basis order for combinations, lexicographic
// term order for coefficients), and load(emit(load(f))) reproduces the same
// bytes as load(f).

#include "ade/category.hpp"
#include "ade/deformed.hpp"
#include "ade/hochschild.hpp"
#include "ade/kadeishvili.hpp"
#include "ade/twisted.hpp"

#include <memory>
#include <string>

namespace ade {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Malformed structure; the message names the offending field path.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Well-formed but violating a type invariant (e.g. a curvature of m-adic order 0).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A loaded document.  The deformation (when present) references *category, so
// the parts are kept alive together.
struct Document {
    BaseSpecPtr base;
    std::shared_ptr<AInfCategory> category;
    std::shared_ptr<AInfDeformation> deformation;     // null when absent
    std::vector<TwObject> twisted;                    // possibly empty
    std::shared_ptr<HochschildCochain> gauge_cochain; // null when absent
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);

std::string emit_document(const Document& doc);
// Classical category over B = Q.
std::string emit_document(const AInfCategory& cat);
std::string emit_document(const AInfDeformation& def);

// Composite artifacts (each is itself a loadable document, with extra
// top-level keys that the loader ignores).
std::string emit_minimal_model(const MinimalModel& mm, const AInfCategory& source);
std::string emit_deformed_minimal_model(const DeformedMinimalModel& mm, bool with_trace);
std::string emit_optimization(const OptimizationResult& opt, bool with_trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

} // namespace ade
