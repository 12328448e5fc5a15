#pragma once
// Residual reports: the uniform result record every check suite produces,
// with text and JSON renderings, plus the conventions ledger whose hash makes
// reports comparable across builds.

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "tcalc/metric.hpp"

namespace tcalc {

// Every sign/normalization choice the engine makes, in one place.  The FNV
// hash of this text is stamped into every report; two reports are comparable
// exactly when their hashes agree.
inline const char* conventions_ledger() {
    return
        "tcalc conventions v1\n"
        "jet coefficients: Taylor-normalized d^a f / a!, graded-lex slot order "
        "(total degree ascending, then exponent tuple lexicographic descending)\n"
        "christoffel: G^l_mn = g^ls (d_m g_sn + d_n g_sm - d_s g_mn) / 2\n"
        "riemann: R^r_smn = d_m G^r_ns - d_n G^r_ms + G^r_ml G^l_ns - G^r_nl G^l_ms\n"
        "ricci: R_sn = R^m_smn; scalar R = g^sn R_sn; unit 2-sphere has R = +2\n"
        "levi-civita: permutation symbol (eps^{01} = eps^{012} = eps^{0123} = +1) "
        "divided by sqrt|det g|, branch picked by the recorded sign of det; "
        "orientation is the declared coordinate order; dual(dual(w)) = +w\n"
        "weyl: C^KLMN = R^KLMN - (g^KM S^NL - g^KN S^ML - g^LM S^NK + g^LN S^MK)/(n-2), "
        "S^NL = R^NL - g^NL R / (2(n-1))\n"
        "cotton: C^KL = (eps^KMN D_M R^L_N + eps^LMN D_M R^K_N) / (2 sqrt|g|)\n"
        "kk lift: G = e^{2s} [[g - a a, -a], [-a, -1]], last coordinate appended\n"
        "kk dual field: f^m = eps^{mab} d_a a_b / sqrt g (3D), "
        "f = eps^{mn} d_m a_n / sqrt(-g) (2D)\n"
        "kk oracle weights: reduced = e^{6s} x direct all-upper Weyl, "
        "reduced = e^{5s} x direct all-upper Cotton; reduced blocks raised/lowered "
        "with the base metric\n"
        "kk 4->3 last-index block: eps^{mnt} (d^l f_t + d_t f^l) / (4 sqrt g) - a_t C^tlmn\n"
        "kk 3->2 block: C_mn = -(1/2)[g_mn (d2f - f^3 + r f/2) - d_m d_n f]; "
        "C^-m = eps^mn d_n(-r/2 + 3f^2/2) / (2 sqrt(-g)) - a_n C^mn "
        "(2D literature uses rbar = -r and Cotton scaled by -2)\n"
        "2d embedding suite: rbar = -r throughout; invariant rbar + 3 f^2\n"
        "dual killing: F^m = eps^{mnl} d_l f_n / (2 sqrt g)\n"
        "einstein-weyl: D_(m W_n) = (D_m W_n + D_n W_m)/2; WR scalar raised with g; "
        "bilinear sign s = -1 for indefinite-signature reductions, +1 otherwise\n";
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string conventions_hash() {
    std::ostringstream os;
    os << "0x" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(conventions_ledger());
    return os.str();
}

struct PointRecord {
    std::vector<double> coords;
    double residual = 0.0;
    bool skipped = false;
    std::string reason;
};

struct ResidualReport {
    std::string check;
    double tolerance = 1e-8;
    std::vector<PointRecord> points;
    double max_residual = 0.0;
    int evaluated = 0;

    void add(std::vector<double> coords, double residual) {
        PointRecord r;
        r.coords = std::move(coords);
        r.residual = residual;
        points.push_back(std::move(r));
        max_residual = std::max(max_residual, residual);
        ++evaluated;
    }
    void skip(std::vector<double> coords, std::string reason) {
        PointRecord r;
        r.coords = std::move(coords);
        r.skipped = true;
        r.reason = std::move(reason);
        points.push_back(std::move(r));
    }
    int skipped() const { return static_cast<int>(points.size()) - evaluated; }
    bool pass() const { return evaluated > 0 && max_residual < tolerance; }
};

// Run `residual_at` over the sample points, recording skips for domain and
// degeneracy failures instead of propagating them.
template <typename F>
inline ResidualReport run_check(std::string name, double tolerance,
                                const std::vector<std::vector<double>>& pts, F&& residual_at) {
    ResidualReport rep;
    rep.check = std::move(name);
    rep.tolerance = tolerance;
    for (const auto& p : pts) {
        try {
            rep.add(p, residual_at(p));
        } catch (const EvalError& e) {
            rep.skip(p, e.what());
        }
    }
    return rep;
}

inline void print_report(std::ostream& os, const ResidualReport& r, bool per_point = false) {
    os << (r.pass() ? "[PASS] " : "[FAIL] ") << r.check << ": max residual " << std::scientific
       << std::setprecision(3) << r.max_residual << " (tolerance " << r.tolerance << ", "
       << r.evaluated << " points";
    if (r.skipped() > 0) os << ", " << r.skipped() << " skipped";
    os << ")\n" << std::defaultfloat;
    if (per_point) {
        for (const auto& p : r.points) {
            os << "    (";
            for (std::size_t i = 0; i < p.coords.size(); ++i) os << (i ? ", " : "") << p.coords[i];
            if (p.skipped) {
                os << "): skipped: " << p.reason << "\n";
            } else {
                os << "): " << std::scientific << std::setprecision(6) << p.residual << "\n"
                   << std::defaultfloat;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Deterministic sample grids
// ---------------------------------------------------------------------------

// Regular lattice: per_axis points per coordinate over the declared domain
// (or the default interval for coordinates without one), row-major in
// coordinate order.  Deterministic; singular points are handled by the
// check runners, not here.
inline std::vector<std::vector<double>> sample_grid(const MetricSpec& m, int per_axis = 5) {
    std::vector<std::vector<double>> axes;
    for (int i = 0; i < m.dim(); ++i) {
        const CoordInterval iv = m.domain(i);
        std::vector<double> axis;
        if (per_axis == 1) {
            axis.push_back(0.5 * (iv.lo + iv.hi));
        } else {
            for (int k = 0; k < per_axis; ++k) {
                axis.push_back(iv.lo + (iv.hi - iv.lo) * k / (per_axis - 1));
            }
        }
        axes.push_back(std::move(axis));
    }
    std::vector<std::vector<double>> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(m.dim()), 0);
    while (true) {
        std::vector<double> p;
        for (int i = 0; i < m.dim(); ++i) p.push_back(axes[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]]);
        out.push_back(std::move(p));
        int i = m.dim() - 1;
        while (i >= 0) {
            if (++idx[static_cast<std::size_t>(i)] < axes[static_cast<std::size_t>(i)].size()) break;
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

// Uniform random samples over the declared domain; used by seeded sweeps.
inline std::vector<std::vector<double>> sample_random(const MetricSpec& m, int count,
                                                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> out;
    for (int k = 0; k < count; ++k) {
        std::vector<double> p;
        for (int i = 0; i < m.dim(); ++i) {
            const CoordInterval iv = m.domain(i);
            std::uniform_real_distribution<double> U(iv.lo, iv.hi);
            p.push_back(U(rng));
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace tcalc
