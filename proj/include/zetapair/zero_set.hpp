#ifndef ZETAPAIR_ZERO_SET_HPP
#define ZETAPAIR_ZERO_SET_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace zetapair {

enum class Source { computed, ingested, synthetic };

// Coordinate convention of the ordinates.  `raw` means zeta-zero heights
// (first ordinate above 14, local mean spacing 2pi/log(t/2pi)); `unit` means
// an unfolded / rescaled sequence with unit mean spacing, for which the
// rescale factor L is 1.
enum class Scaling { raw, unit };

class ZeroSet {
public:
    ZeroSet() = default;
    // Validates ordering (non-decreasing; equal values form multiplicity
    // clusters) and positivity.  For raw sets the first ordinate must
    // exceed 14.
    ZeroSet(std::vector<double> ordinates, Source source, Scaling scaling,
            double tol, double t_max, bool verified);

    std::span<const double> ordinates() const { return ords_; }
    std::size_t size() const { return ords_.size(); }
    bool empty() const { return ords_.empty(); }
    double operator[](std::size_t i) const { return ords_[i]; }

    Source source() const { return source_; }
    Scaling scaling() const { return scaling_; }
    double tol() const { return tol_; }
    double t_max() const { return t_max_; }
    bool verified() const { return verified_; }
    void mark_verified() { verified_ = true; }

    // All ordinates with a < gamma <= b (left-open, right-closed).
    // Throws RangeBeyondCertified if b > t_max.
    std::vector<double> query_range(double a, double b) const;

    // Rescale factor in effect for this set at statistic height T:
    // log(T)/2pi for raw sets, 1 for unit sets.
    double rescale_factor_at(double T) const;

private:
    std::vector<double> ords_;
    Source source_ = Source::computed;
    Scaling scaling_ = Scaling::raw;
    double tol_ = 1e-8;
    double t_max_ = 0.0;
    bool verified_ = false;
};

// L = log(T)/(2 pi), the mean zero density near height T.
double rescale_factor(double T);

// Unfold a raw set through the mean counting function N_bar = theta/pi + 1,
// producing a unit-spacing set.  The clustering tolerance is mapped through
// the local slope at t_max.
ZeroSet unfold(const ZeroSet& zs);

// N_bar(T): statistic height of a raw-coordinate height T in unfolded units.
double unfold_height(double T);

} // namespace zetapair

#endif
