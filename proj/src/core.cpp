#include "fractalfn/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fractalfn {

namespace {

// Reads this close to a node (in units of the grid step) snap onto it.
constexpr double kNodeSnap = 1e-9;

std::string describe(double x, const Interval& iv) {
    std::ostringstream os;
    os.precision(17);
    os << x << " outside [" << iv.lo << ", " << iv.hi << "]";
    return os.str();
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw InvariantError("interval requires finite lo < hi");
}

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 3)
        throw InvariantError("partition needs at least 3 nodes (N >= 2 subintervals)");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) throw InvariantError("partition nodes must be finite");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw InvariantError("partition nodes must be strictly increasing");
    }
}

Partition Partition::uniform(const Interval& interval, std::size_t subintervals) {
    std::vector<double> nodes(subintervals + 1);
    for (std::size_t i = 0; i <= subintervals; ++i)
        nodes[i] = interval.lo + interval.length() * static_cast<double>(i) / static_cast<double>(subintervals);
    nodes.back() = interval.hi;
    return Partition(std::move(nodes));
}

std::size_t Partition::locate(double x) const {
    if (!(x >= nodes_.front() && x <= nodes_.back()))
        throw DomainError("locate: " + describe(x, interval()));
    if (x == nodes_.back()) return subinterval_count() - 1;
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

std::size_t locate_subinterval(const Partition& partition, double x) { return partition.locate(x); }

// ------------------------------------------------------------ ScalingVector

ScalingVector::ScalingVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) throw InvariantError("scaling vector must not be empty");
    for (double a : alphas_)
        if (!(std::isfinite(a) && std::abs(a) < 1.0))
            throw InvariantError("scaling factors must satisfy |alpha_i| < 1");
}

ScalingVector ScalingVector::uniform(std::size_t count, double value) {
    return ScalingVector(std::vector<double>(count, value));
}

double ScalingVector::sup_abs() const noexcept {
    double m = 0.0;
    for (double a : alphas_) m = std::max(m, std::abs(a));
    return m;
}

double ScalingVector::sum_abs() const noexcept {
    double s = 0.0;
    for (double a : alphas_) s += std::abs(a);
    return s;
}

// ---------------------------------------------------------- AffineMapFamily

AffineMapFamily::AffineMapFamily(const Partition& partition) : domain_(partition.interval()) {
    const auto nodes = partition.nodes();
    const double width = domain_.length();
    const std::size_t n = partition.subinterval_count();
    left_.resize(n + 1);
    slopes_.resize(n);
    offsets_.resize(n);
    std::copy(nodes.begin(), nodes.end(), left_.begin());
    for (std::size_t i = 0; i < n; ++i) {
        slopes_[i] = (nodes[i + 1] - nodes[i]) / width;
        offsets_[i] = nodes[i] - slopes_[i] * domain_.lo;
    }
}

double AffineMapFamily::forward(std::size_t i, double x) const {
    // Anchored at x_{i-1} so that both endpoint identities hold to rounding.
    if (x == domain_.hi) return left_.at(i + 1);
    return left_.at(i) + slopes_.at(i) * (x - domain_.lo);
}

double AffineMapFamily::inverse(std::size_t i, double x) const {
    const double lo = left_.at(i);
    const double hi = left_.at(i + 1);
    if (x == hi) return domain_.hi;
    const double y = domain_.lo + (x - lo) * domain_.length() / (hi - lo);
    return std::clamp(y, domain_.lo, domain_.hi);
}

AffineMapFamily build_affine_maps(const Partition& partition) { return AffineMapFamily(partition); }

// ---------------------------------------------------------- SampledFunction

SampledFunction::SampledFunction(Interval interval, std::vector<double> values)
    : interval_(interval), values_(std::move(values)) {
    if (values_.size() < 2) throw InvariantError("sampled function needs at least 2 samples");
}

SampledFunction SampledFunction::sample(const Interval& interval, std::size_t count,
                                        const std::function<double(double)>& fn) {
    if (count < 2) throw InvariantError("sampled function needs at least 2 samples");
    SampledFunction out(interval, std::vector<double>(count, 0.0));
    for (std::size_t j = 0; j < count; ++j) out.values_[j] = fn(out.node(j));
    return out;
}

SampledFunction SampledFunction::constant(const Interval& interval, std::size_t count, double value) {
    return SampledFunction(interval, std::vector<double>(count, value));
}

double SampledFunction::node(std::size_t j) const {
    if (j + 1 == values_.size()) return interval_.hi;
    return interval_.lo + interval_.length() * static_cast<double>(j) / static_cast<double>(values_.size() - 1);
}

double SampledFunction::operator()(double x) const {
    const double h = step();
    const double margin = 1e-12 * std::max(1.0, std::max(std::abs(interval_.lo), std::abs(interval_.hi)));
    if (!(x >= interval_.lo - margin && x <= interval_.hi + margin))
        throw DomainError("sampled read: " + describe(x, interval_));
    const double last = static_cast<double>(values_.size() - 1);
    const double t = std::clamp((x - interval_.lo) / h, 0.0, last);
    const double nearest = std::round(t);
    if (std::abs(t - nearest) < kNodeSnap) return values_[static_cast<std::size_t>(nearest)];
    const auto j = static_cast<std::size_t>(std::floor(t));
    const double w = t - static_cast<double>(j);
    return (1.0 - w) * values_[j] + w * values_[j + 1];
}

SampledFunction SampledFunction::resampled(std::size_t count) const {
    if (count == values_.size()) return *this;
    return sample(interval_, count, [this](double x) { return (*this)(x); });
}

bool SampledFunction::same_grid(const SampledFunction& other) const noexcept {
    return interval_ == other.interval_ && values_.size() == other.values_.size();
}

double SampledFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

SampledFunction SampledFunction::operator+(const SampledFunction& other) const {
    if (!same_grid(other)) throw ShapeError("grid mismatch in addition");
    std::vector<double> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = values_[j] + other.values_[j];
    return SampledFunction(interval_, std::move(v));
}

SampledFunction SampledFunction::operator-(const SampledFunction& other) const {
    if (!same_grid(other)) throw ShapeError("grid mismatch in subtraction");
    std::vector<double> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = values_[j] - other.values_[j];
    return SampledFunction(interval_, std::move(v));
}

SampledFunction SampledFunction::operator*(double factor) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= factor;
    return SampledFunction(interval_, std::move(v));
}

SampledFunction SampledFunction::plus_constant(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x += c;
    return SampledFunction(interval_, std::move(v));
}

double sup_norm(const SampledFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double sup_distance(const SampledFunction& f, const SampledFunction& g) {
    if (!f.same_grid(g)) throw ShapeError("sup_distance requires identical grids");
    double m = 0.0;
    const auto a = f.values();
    const auto b = g.values();
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double interpolation_error_estimate(const SampledFunction& f) {
    const auto v = f.values();
    double m = 0.0;
    for (std::size_t j = 1; j + 1 < v.size(); ++j) m = std::max(m, std::abs(v[j + 1] - 2.0 * v[j] + v[j - 1]));
    return m / 8.0;
}

}  // namespace fractalfn
