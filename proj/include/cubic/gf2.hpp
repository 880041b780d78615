#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace cubic {

// Packed bit vector over GF(2).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    // Parity of the bitwise AND with o.
    bool dot(const BitVec& o) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
        return std::popcount(acc) & 1;
    }
    // Index of the lowest set bit, or size() when empty.
    std::size_t lowest() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
        return n_;
    }
    std::vector<std::uint32_t> ones() const {
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                out.push_back(static_cast<std::uint32_t>(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }
    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (auto w : v.words()) h = (h ^ w) * 0x100000001b3ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

// Incrementally maintained echelon basis. Each stored vector has a distinct
// lowest set bit, so reduction walks strictly upwards through the bits.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t n) : n_(n), slot_(n, -1) {}

    std::size_t dim() const { return rows_.size(); }
    std::size_t width() const { return n_; }

    // Reduces v in place; returns true if it ends up zero.
    bool reduce(BitVec& v) const;
    // Inserts v if independent; returns whether the basis grew.
    bool insert(BitVec v);
    bool contains(BitVec v) const { return reduce(v); }
    const std::vector<BitVec>& rows() const { return rows_; }

private:
    std::size_t n_;
    std::vector<int> slot_;
    std::vector<BitVec> rows_;
};

// Reduced row echelon form of a dense GF(2) matrix given as rows.
struct Rref {
    std::vector<BitVec> rows;              // nonzero rows only, in pivot order
    std::vector<std::uint32_t> pivots;     // pivot column of each row
    std::size_t cols = 0;
};

Rref rref(std::vector<BitVec> rows, std::size_t cols);
std::size_t rank(std::vector<BitVec> rows, std::size_t cols);

// Basis of {x : A x = 0} where A is given by its rows.
std::vector<BitVec> nullspace(const std::vector<BitVec>& rows, std::size_t cols);

// Solves A x = b. Returns false when inconsistent.
bool solve(const std::vector<BitVec>& rows, std::size_t cols, const BitVec& b, BitVec& x);

// Returns the subset of `candidates` (by index) that extends span(base)
// to a basis of span(base + candidates).
std::vector<std::size_t> extend_basis(const std::vector<BitVec>& base,
                                      const std::vector<BitVec>& candidates,
                                      std::size_t cols);

// Inverse of a square invertible GF(2) matrix; throws if singular.
std::vector<BitVec> inverse(const std::vector<BitVec>& rows);

} // namespace cubic
