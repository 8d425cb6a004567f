#pragma once

#include "dq/chart.hpp"
#include "dq/starlab.hpp"
#include "dq/twist.hpp"

namespace dq {

struct BuildOptions {
    int jet_degree = -1;          // -1: 2 * order + 2
    bool stability_check = true;  // re-run at jet_degree + 2 and compare
    int match_window = 4;         // total degree of the matching monomial pairs
    bool left_frame = true;       // frame used to realize the twist legs
    int gutt_check_degree = 4;    // verification window of the Gutt extraction
};

struct BuiltTwist {
    Twist twist;
    ExpChart chart;
    /// The restricted star product pulled back to the exponential chart
    /// (jet coefficients, valid to chart.jet_degree - order).
    StarProduct transported;
    std::vector<LinDiffOp> frame;
};

/// Constructive pipeline: central extension, Gutt star product on h*,
/// tangential restriction to the unit level, pullback through the orbit
/// chart, and the invariant-frame matching solve for the twist legs.  The
/// result is verified exactly against the twist axioms; failures of the
/// matching solve or the axioms raise MathError naming the jet order.
BuiltTwist build_drinfeld_twist(const SymplecticLieAlgebra& sg, int order,
                                BuildOptions opt = {});

/// Left-invariant star product on Poly(g) in the exponential chart,
/// applying the twist legs through the given frame (jet coefficients).
StarProduct star_from_twist(const Twist& f, const std::vector<LinDiffOp>& frame,
                            int jet_degree);

/// Compositions of frame fields over all weakly increasing words of
/// length min_len..max_len (jet coefficients): a PBW-style basis of the
/// invariant differential operators of bounded order.
std::vector<LinDiffOp> frame_word_basis(const std::vector<LinDiffOp>& frame, int min_len,
                                        int max_len, int trunc_degree);

}  // namespace dq
