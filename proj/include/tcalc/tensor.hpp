#pragma once
// Dense tensor of jets at a point, with per-slot variance bookkeeping.

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "tcalc/jet.hpp"

namespace tcalc {

enum class Var : std::uint8_t { Up, Lo };

class TensorValue {
  public:
    TensorValue() = default;
    TensorValue(int dim, std::vector<Var> variance, int jet_dim, int jet_order)
        : dim_(dim), variance_(std::move(variance)) {
        std::size_t n = 1;
        for (std::size_t r = 0; r < variance_.size(); ++r) n *= static_cast<std::size_t>(dim_);
        entries_.assign(n, Jet(jet_dim, jet_order));
    }
    // Scalar (rank 0) helper.
    static TensorValue scalar(int dim, Jet j) {
        TensorValue t;
        t.dim_ = dim;
        t.entries_ = {std::move(j)};
        return t;
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(variance_.size()); }
    const std::vector<Var>& variance() const { return variance_; }
    int jet_order() const { return entries_.empty() ? 0 : entries_[0].order(); }

    std::size_t size() const { return entries_.size(); }
    const Jet& operator[](std::size_t flat) const { return entries_[flat]; }
    Jet& operator[](std::size_t flat) { return entries_[flat]; }

    std::size_t flat_index(std::initializer_list<int> idx) const {
        std::size_t f = 0;
        for (int i : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
        return f;
    }
    const Jet& at(std::initializer_list<int> idx) const { return entries_[flat_index(idx)]; }
    Jet& at(std::initializer_list<int> idx) { return entries_[flat_index(idx)]; }

    double value(std::initializer_list<int> idx) const { return at(idx).value(); }

    // Decode flat index into per-slot indices.
    std::array<int, 5> unflatten(std::size_t flat) const {
        std::array<int, 5> idx{};
        for (int s = rank() - 1; s >= 0; --s) {
            idx[static_cast<std::size_t>(s)] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
            flat /= static_cast<std::size_t>(dim_);
        }
        return idx;
    }

    double max_abs_value() const {
        double m = 0.0;
        for (const auto& j : entries_) m = std::max(m, std::abs(j.value()));
        return m;
    }

    TensorValue truncated(int new_order) const {
        TensorValue t = *this;
        for (auto& j : t.entries_) j = j.truncated(new_order);
        return t;
    }

    friend TensorValue operator+(const TensorValue& a, const TensorValue& b) {
        TensorValue r = a;
        for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
        return r;
    }
    friend TensorValue operator-(const TensorValue& a, const TensorValue& b) {
        TensorValue r = a;
        for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
        return r;
    }
    TensorValue operator-() const {
        TensorValue r = *this;
        for (auto& j : r.entries_) j = -j;
        return r;
    }

  private:
    int dim_ = 0;
    std::vector<Var> variance_;
    std::vector<Jet> entries_;
};

// Sign of the permutation (0 when any index repeats).
inline int perm_sign(std::span<const int> idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return 0;
            if (idx[i] > idx[j]) sign = -sign;
        }
    }
    return sign;
}
inline int perm_sign(std::initializer_list<int> idx) {
    return perm_sign(std::span<const int>(idx.begin(), idx.size()));
}

// Largest |value| difference from exchanging two slots, for symmetry checks.
inline double max_symmetry_violation(const TensorValue& t, int slot_a, int slot_b) {
    double m = 0.0;
    for (std::size_t f = 0; f < t.size(); ++f) {
        auto idx = t.unflatten(f);
        std::swap(idx[static_cast<std::size_t>(slot_a)], idx[static_cast<std::size_t>(slot_b)]);
        std::size_t g = 0;
        for (int s = 0; s < t.rank(); ++s) {
            g = g * static_cast<std::size_t>(t.dim()) + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
        }
        m = std::max(m, std::abs(t[f].value() - t[g].value()));
    }
    return m;
}

inline double max_antisymmetry_violation(const TensorValue& t, int slot_a, int slot_b) {
    double m = 0.0;
    for (std::size_t f = 0; f < t.size(); ++f) {
        auto idx = t.unflatten(f);
        std::swap(idx[static_cast<std::size_t>(slot_a)], idx[static_cast<std::size_t>(slot_b)]);
        std::size_t g = 0;
        for (int s = 0; s < t.rank(); ++s) {
            g = g * static_cast<std::size_t>(t.dim()) + static_cast<std::size_t>(idx[static_cast<std::size_t>(s)]);
        }
        m = std::max(m, std::abs(t[f].value() + t[g].value()));
    }
    return m;
}

}  // namespace tcalc
