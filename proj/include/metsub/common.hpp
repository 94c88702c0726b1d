#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace metsub {

using Vec = std::vector<double>;

// Global numeric tolerances. Individual spaces may override the equality
// tolerance where their arithmetic is less exact (see WassersteinSpace).
inline constexpr double kTol = 1e-9;        // element-equality tolerance
inline constexpr double kMergeTol = 1e-12;  // canonical merging of atoms/points
inline constexpr double kAntipodalTol = 1e-8;  // radians below pi

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A precondition stated by an operation's contract was violated
// (e.g. metric-property check requested on a non-intrinsic space).
struct contract_error : error {
    using error::error;
};

// Input outside the operation's domain (parameter out of range,
// dimension mismatch, malformed sequence).
struct invalid_input : error {
    using error::error;
};

// A numerically ill-posed configuration (antipodal slerp, vanishing
// Bezier derivative). Carries enough context to name the failing index.
struct numerical_error : error {
    using error::error;
};

// ---- small dense-vector helpers ------------------------------------------

inline void require_same_dim(const Vec& a, const Vec& b, const char* who) {
    if (a.size() != b.size())
        throw invalid_input(std::string(who) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
}

inline Vec add(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scale(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline double dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double euclid_dist(const Vec& a, const Vec& b) { return norm(sub(a, b)); }

inline Vec lerp(double w, const Vec& a, const Vec& b) {
    require_same_dim(a, b, "lerp");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - w) * a[i] + w * b[i];
    return r;
}

// ---- deterministic random source -----------------------------------------
//
// Distributions are derived from raw mt19937_64 output by hand so that a
// seed yields the same stream on every standard library implementation.

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // [0,1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller, deterministic, no cached spare.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Vec gaussian_vec(std::size_t dim) {
        Vec v(dim);
        for (auto& x : v) x = normal();
        return v;
    }

    Vec unit_vec(std::size_t dim) {
        Vec v = gaussian_vec(dim);
        double n = norm(v);
        while (n < 1e-12) {
            v = gaussian_vec(dim);
            n = norm(v);
        }
        return scale(1.0 / n, v);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace metsub
