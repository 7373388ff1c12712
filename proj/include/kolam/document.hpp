#pragma once

#include "kolam/diagram.hpp"
#include "kolam/render.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kolam {

// What is needed to rebuild the curves of a document from scratch.
struct Provenance {
    DotSet original_dots;
    JunctionPolicy policy;
    std::string assignment;
    std::optional<std::uint64_t> seed;  // set when the assignment was drawn at random
    std::vector<std::string> notes;
};

struct KolamDocument {
    DotSet dots;  // may differ from provenance.original_dots after edits
    std::vector<Curve> curves;
    Style style;
    Provenance provenance;
    ValidationReport report;
};

// The whole pipeline on a parent that is already built.
struct Generated {
    std::shared_ptr<const ParentKolam> parent;
    Kolam kolam;
    std::vector<Curve> curves;  // smoothed
};

std::shared_ptr<const ParentKolam> make_parent(const DotSet& dots, const JunctionPolicy& policy);
Generated generate(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment,
                   const Style& style = {}, const ValidationOptions& validation = {});

// Uniformly random bonds from a seeded 64-bit Mersenne Twister.
BondAssignment random_assignment(std::size_t junction_count, std::uint64_t seed);

KolamDocument build_document(std::shared_ptr<const ParentKolam> parent, const BondAssignment& assignment,
                             const Style& style = {}, const ValidationOptions& validation = {},
                             std::optional<std::uint64_t> seed = std::nullopt);
KolamDocument build_document(const DotSet& dots, const JunctionPolicy& policy, const BondAssignment& assignment,
                             const Style& style = {}, const ValidationOptions& validation = {},
                             std::optional<std::uint64_t> seed = std::nullopt);

// Rebuilds the curves from provenance and style alone.
std::vector<Curve> regenerate_curves(const KolamDocument& doc);

// SVG 1.1 with one path per curve and one filled circle per dot. Throws
// KolamError "empty-document" when there is nothing to draw.
std::string emit_svg(const KolamDocument& doc);

// Fixed six-decimal, locale-independent formatting; "-0" prints as "0".
std::string format_fixed6(double v);

struct DotEdit {
    enum class Kind { Add, Remove, Move };
    Kind kind = Kind::Add;
    int id = -1;               // Remove, Move
    Point at = Point::Zero();  // Add: position; Move: target or offset
    bool relative = false;     // Move by `at` instead of to `at`
};

struct EditOptions {
    // Strict: an uncircumscribed dot or an empty result is an error.
    // Otherwise M1 is reported as failing with a warning.
    bool strict = false;
    double winding_threshold = 1.0 - 1e-6;
};

// Applies the edits in order and revalidates M1/M2 against the new dots.
// Curves and provenance are untouched; removal renumbers later dots.
// Throws "dot-on-curve", "unknown-dot", and in strict mode
// "uncircumscribed-dot" and "no-dots".
KolamDocument edit_dots(const KolamDocument& doc, const std::vector<DotEdit>& edits, const EditOptions& options = {});

}  // namespace kolam
