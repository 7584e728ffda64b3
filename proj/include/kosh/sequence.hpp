// Koshliakov root sequence lambda_n(p) and its Dirichlet-series weights.
//
// For finite p the n-th root lies in (n - 1/2, n).  We store it as
// lambda_n = (n - 1/2) + eps_n with eps_n = atan(p/lambda_n)/pi in (0, 1/2),
// which keeps the full double precision of the offset even for large n.
#pragma once

#include "kosh/types.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace kosh {

// Residual |p sin(pi y) + y cos(pi y)| evaluated in extended precision at the
// exactly represented root y = (n - 1/2) + eps.
double root_residual(const ShapeParam& shape, int n, double eps);

// Offset eps_n of the n-th root (see file comment).  Closed form for limits.
// The root is accepted when root_residual < tol * max(1, p + n).
double solve_offset(const ShapeParam& shape, int n, double tol = 1e-12);

// lambda_n(p) in (n - 1/2, n); closed form n or n - 1/2 for the limit shapes.
double solve_lambda(const ShapeParam& shape, int n, double tol = 1e-12);

// w(lambda) = (p^2 + lambda^2)/(p(p + 1/pi) + lambda^2); 1 for the limit shapes.
double weight(const ShapeParam& shape, double lambda);

class KoshSequence {
public:
    KoshSequence(ShapeParam shape, std::vector<double> offsets);

    const ShapeParam& shape() const { return shape_; }
    int capacity() const { return static_cast<int>(roots_.size()); }
    // 1-based accessors.
    double lambda(int n) const { return roots_.at(static_cast<std::size_t>(n - 1)); }
    double weight(int n) const { return weights_.at(static_cast<std::size_t>(n - 1)); }
    double offset(int n) const { return offsets_.at(static_cast<std::size_t>(n - 1)); }
    const std::vector<double>& roots() const { return roots_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& offsets() const { return offsets_; }
    // max(1, sup_n w_n) over the stored weights.
    double weight_bound() const { return weight_bound_; }

private:
    ShapeParam shape_;
    std::vector<double> offsets_;
    std::vector<double> roots_;
    std::vector<double> weights_;
    double weight_bound_ = 1.0;
};

KoshSequence build_sequence(const ShapeParam& shape, int N, double tol = 1e-12);

// Append-only, thread-safe cache of immutable sequences.  Asking for more
// roots than are cached rebuilds the entry with capacity 2n.
class SequenceCache {
public:
    std::shared_ptr<const KoshSequence> get(const ShapeParam& shape, int N);
    void clear();

private:
    std::mutex mutex_;
    std::map<std::pair<int, double>, std::shared_ptr<const KoshSequence>> entries_;
};

SequenceCache& global_sequence_cache();

// Convenience wrapper around the global cache.
std::shared_ptr<const KoshSequence> sequence(const ShapeParam& shape, int N);

}  // namespace kosh
