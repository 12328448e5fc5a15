#pragma once
// Graded-lexicographic multi-index enumeration shared by all jet arithmetic.
//
// Slots are ordered by total degree first, then lexicographically by exponent
// tuple with the first coordinate weighted highest.  For dim=2, order=2:
//   (0,0) | (1,0) (0,1) | (2,0) (1,1) (0,2)
// This enumeration is fixed and documented in the README so that coefficient
// dumps are reproducible across builds.

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace tcalc {

inline constexpr int kMinDim = 1;
inline constexpr int kMaxDim = 4;
inline constexpr int kMaxOrder = 4;

using Exponents = std::array<std::uint8_t, kMaxDim>;

// Precomputed slot tables for one (dim, order) pair.
struct MultiIndexTable {
    int dim = 0;
    int order = 0;
    int count = 0;                  // C(dim + order, order)
    std::vector<Exponents> exps;    // exponent tuple per slot, graded-lex
    std::vector<int> degree;        // total degree per slot
    std::vector<double> factorial;  // alpha! per slot

    // slot lookup: exponents encoded base (kMaxOrder + 1)
    std::vector<int> slot_by_code;

    // product convolution: result[c] += a[i] * b[j] for every entry
    struct ProdEntry {
        std::uint16_t i, j, c;
    };
    std::vector<ProdEntry> prod;

    // partial-derivative maps: dsrc[d][k] = slot of exps[k] + e_d, or -1 when
    // that slot exceeds the truncation order; dfac[d][k] = exps[k][d] + 1.
    std::array<std::vector<int>, kMaxDim> dsrc;
    std::array<std::vector<double>, kMaxDim> dfac;

    int encode(const Exponents& e) const {
        int code = 0;
        for (int d = 0; d < dim; ++d) code = code * (kMaxOrder + 1) + e[d];
        return code;
    }
    int slot(const Exponents& e) const {
        const int s = slot_by_code[encode(e)];
        return s;
    }
};

namespace detail {

inline void build_exponents(int dim, int deg, int slot_dim, Exponents cur, int remaining,
                            std::vector<Exponents>& out) {
    if (slot_dim == dim - 1) {
        cur[static_cast<std::size_t>(slot_dim)] = static_cast<std::uint8_t>(remaining);
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<std::size_t>(slot_dim)] = static_cast<std::uint8_t>(e);
        build_exponents(dim, deg, slot_dim + 1, cur, remaining - e, out);
    }
}

inline std::unique_ptr<MultiIndexTable> build_table(int dim, int order) {
    auto t = std::make_unique<MultiIndexTable>();
    t->dim = dim;
    t->order = order;
    for (int deg = 0; deg <= order; ++deg) {
        build_exponents(dim, deg, 0, Exponents{}, deg, t->exps);
    }
    t->count = static_cast<int>(t->exps.size());

    int code_span = 1;
    for (int d = 0; d < dim; ++d) code_span *= (kMaxOrder + 1);
    t->slot_by_code.assign(static_cast<std::size_t>(code_span), -1);
    for (int k = 0; k < t->count; ++k) {
        t->slot_by_code[static_cast<std::size_t>(t->encode(t->exps[static_cast<std::size_t>(k)]))] = k;
    }

    t->degree.resize(static_cast<std::size_t>(t->count));
    t->factorial.resize(static_cast<std::size_t>(t->count));
    for (int k = 0; k < t->count; ++k) {
        const auto& e = t->exps[static_cast<std::size_t>(k)];
        int deg = 0;
        double fact = 1.0;
        for (int d = 0; d < dim; ++d) {
            deg += e[static_cast<std::size_t>(d)];
            for (int m = 2; m <= e[static_cast<std::size_t>(d)]; ++m) fact *= m;
        }
        t->degree[static_cast<std::size_t>(k)] = deg;
        t->factorial[static_cast<std::size_t>(k)] = fact;
    }

    for (int i = 0; i < t->count; ++i) {
        for (int j = 0; j < t->count; ++j) {
            if (t->degree[static_cast<std::size_t>(i)] + t->degree[static_cast<std::size_t>(j)] > order) continue;
            Exponents sum{};
            for (int d = 0; d < dim; ++d) {
                sum[static_cast<std::size_t>(d)] = static_cast<std::uint8_t>(
                    t->exps[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] +
                    t->exps[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)]);
            }
            t->prod.push_back({static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                               static_cast<std::uint16_t>(t->slot(sum))});
        }
    }

    for (int d = 0; d < dim; ++d) {
        t->dsrc[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(t->count), -1);
        t->dfac[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(t->count), 0.0);
        for (int k = 0; k < t->count; ++k) {
            if (t->degree[static_cast<std::size_t>(k)] + 1 > order) continue;
            Exponents up = t->exps[static_cast<std::size_t>(k)];
            up[static_cast<std::size_t>(d)] = static_cast<std::uint8_t>(up[static_cast<std::size_t>(d)] + 1);
            t->dsrc[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] = t->slot(up);
            t->dfac[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] =
                t->exps[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)] + 1.0;
        }
    }
    return t;
}

}  // namespace detail

// Shared immutable tables, built once; safe for concurrent readers.
inline const MultiIndexTable& mi_table(int dim, int order) {
    if (dim < kMinDim || dim > kMaxDim || order < 0 || order > kMaxOrder) {
        throw std::invalid_argument("mi_table: dim must be 1..4 and order 0..4");
    }
    static const auto tables = [] {
        std::array<std::array<std::unique_ptr<MultiIndexTable>, kMaxOrder + 1>, kMaxDim + 1> all;
        for (int d = kMinDim; d <= kMaxDim; ++d) {
            for (int o = 0; o <= kMaxOrder; ++o) {
                all[static_cast<std::size_t>(d)][static_cast<std::size_t>(o)] = detail::build_table(d, o);
            }
        }
        return all;
    }();
    return *tables[static_cast<std::size_t>(dim)][static_cast<std::size_t>(order)];
}

inline int n_jet_coeffs(int dim, int order) { return mi_table(dim, order).count; }

}  // namespace tcalc
