#pragma once

#include "cmc1/surface.hpp"

namespace cmc1 {

struct TypeCandidate {
    SurfaceType type;
    double ta_min_over_2pi = 0;          // sharpest lower bound the rules give
    bool ta_exact = false;               // the budget pins TA exactly
    std::vector<std::string> constraints;  // rules that admitted the candidate
    std::vector<std::string> notes;
};

struct CaseReport {
    std::string id;
    bool confirmed = false;
    std::vector<std::string> lines;
    std::map<std::string, double> values;
};

/// Enumerate the feasible types Gamma(d_1,...,d_n) with TA <= 2 pi rho.
/// The window analysis (Lemma 7.3, the flux corollaries, the parity axiom,
/// and the case exclusions A.8/A.13/A.14/A.18) is exact for rho <= 4.
std::vector<TypeCandidate> enumerate_types(double rho);

/// Nonexistence of type O(0,-2,-3): solving (A.8)+(A.10) forces a = b = q,
/// and branch (2,-3,0) leaves a nonzero residual.  Verified on a mu-grid.
CaseReport verify_A13(int grid_points = 101);

/// Nonexistence of type O(1,-2,-3): residues of dg vanish at the printed
/// a, b and the log-term equals -(mu+2)/3 != 0.  Verified on a mu-grid.
CaseReport verify_A14(int grid_points = 101);

/// The (A.38) obstruction: phi(alpha2, alpha3) > 1 on the open domain D.
CaseReport verify_A18(int m2, int m3, int m4, int grid = 500);

/// TA >= 8 pi chains for O(-3,-4), O(-2,-5) and O(d,-2,-3) with d >= -1,
/// via the odd-umbilic-sum axiom (Corollary 4.7 of the companion paper).
CaseReport verify_parity_bounds();

}  // namespace cmc1
