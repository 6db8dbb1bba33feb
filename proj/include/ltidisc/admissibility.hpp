#pragma once

#include "ltidisc/spectrum.hpp"
#include "ltidisc/thresholds.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltidisc {

enum class Verdict { admissible, marginal, inadmissible };

enum class ResonanceKind {
    second_order_pi_multiple, ///< b T on an integral multiple of pi (n = 2)
    coplanarity,              ///< every rotation b alpha_i on a pi multiple
    equal_real_part_two_pi,   ///< equal real parts, rotation gap on a 2 pi multiple
    generic_degeneracy,       ///< scaled window determinant below threshold
};

const char* to_string(ResonanceKind kind);

struct ResonanceFinding {
    ResonanceKind kind;
    std::vector<double> angles; ///< offending rotation angles (radians)
    std::vector<int> indices;   ///< offending alpha indices
    std::string detail;
};

struct AdmissibilityReport {
    Verdict verdict = Verdict::admissible;
    /// |det| of the fundamental-solution matrix scaled by the Hadamard
    /// column bound; dimensionless in [0, 1].
    double delta_magnitude = 0.0;
    std::vector<ResonanceFinding> resonances;
    Thresholds thresholds;
    std::vector<std::string> notes;
};

/// Generic admissibility of a window of n periods: builds the
/// fundamental-solution matrix at the cumulative sums (confluent columns for
/// repeated eigenvalues), classifies the scaled determinant, and attaches
/// any named resonance that explains a degeneracy.
AdmissibilityReport check_generic(const Spectrum& sp, std::span<const double> periods,
                                  const Thresholds& th = {});

/// Second-order resonance: flags when b*T sits within `angle_tol` of an
/// integral multiple of pi. Necessary and sufficient for n = 2.
std::optional<ResonanceFinding> check_second_order(double b, double T,
                                                   double angle_tol = 1e-9);

/// Third-order named resonances for a real pole `lambda` and a complex pair
/// a +/- jb, with rotations alpha1 < alpha2:
///  (a) coplanarity when b*alpha1 and b*alpha2 both sit on pi multiples;
///  (b) equal-real-part resonance when lambda == a and some rotation gap
///      b*(alpha_j - alpha_i) sits on a 2 pi multiple.
std::vector<ResonanceFinding> check_third_order(double lambda, double a, double b,
                                                double alpha1, double alpha2,
                                                double angle_tol = 1e-9);

/// Counterclockwise angular interval with 0 <= lo < hi <= 2 pi.
struct AngularArc {
    double lo;
    double hi;
    bool contains(double angle) const { return angle > lo && angle < hi; }
};

/// Safe choices of the third rotation b*alpha2 for a third-order system,
/// expressed per 2 pi rotation. Points inside the allowed arcs guarantee
/// linear independence of the three window vectors.
struct ArcSet {
    double theta1 = 0.0;    ///< b*alpha1 mod 2 pi
    double min_angle = 0.0; ///< b*alpha1; queries below this are not meaningful
    int sign_case = 0;      ///< +1 for lambda > 0, -1 for lambda < 0
    std::vector<AngularArc> per_rotation;         ///< allowed on every rotation
    std::vector<AngularArc> first_rotation_extra; ///< allowed only before 2 pi
    /// Beyond this alpha the window vector outgrows every vector on the
    /// plane/surface intersection, so any alpha2 > alpha_star is admissible
    /// (lambda > 0 only).
    std::optional<double> alpha_star;

    /// Whether the absolute rotation angle b*alpha2 lies in an allowed arc.
    bool allows_angle(double total_angle) const;
    /// Arc membership plus the alpha_star escape for large alpha2.
    bool allows_alpha(double alpha2, double b) const;
};

/// Allowed/forbidden arcs for b*alpha2 in a third-order system with real
/// pole `lambda` and complex pair a +/- jb, given the first rotation alpha1.
/// Requires b*alpha1 off the pi multiples (resonant alpha1 is rejected).
ArcSet allowed_arcs_third_order(double lambda, double a, double b, double alpha1);

/// Fourth-order dimension-reduction test for eigenvalues {lambda1, lambda2,
/// a +/- jb} at rotations alphas[0..3]: projects the window vectors onto two
/// three-dimensional curves and returns true (independent) exactly when the
/// two projected coordinate solutions for the held-out vector disagree.
/// Throws PreconditionError when some 3-subset of either projected family is
/// itself dependent (reduce further or use the generic check).
bool reduction_check_fourth_order(double lambda1, double lambda2, double a, double b,
                                  const std::array<double, 4>& alphas);

} // namespace ltidisc
