#include "cubic/gf2.hpp"

#include <stdexcept>

namespace cubic {

bool EchelonBasis::reduce(BitVec& v) const {
    std::size_t p = v.lowest();
    while (p < n_) {
        int s = slot_[p];
        if (s < 0) return false;
        v ^= rows_[s];
        p = v.lowest();
    }
    return true;
}

bool EchelonBasis::insert(BitVec v) {
    if (reduce(v)) return false;
    slot_[v.lowest()] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    return true;
}

Rref rref(std::vector<BitVec> rows, std::size_t cols) {
    Rref out;
    out.cols = cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(c)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(c)) rows[i] ^= rows[r];
        out.pivots.push_back(static_cast<std::uint32_t>(c));
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::size_t rank(std::vector<BitVec> rows, std::size_t cols) {
    if (rows.empty()) return 0;
    EchelonBasis basis(cols);
    for (auto& row : rows) basis.insert(std::move(row));
    return basis.dim();
}

std::vector<BitVec> nullspace(const std::vector<BitVec>& rows, std::size_t cols) {
    Rref R = rref(rows, cols);
    std::vector<char> is_pivot(cols, 0);
    for (auto p : R.pivots) is_pivot[p] = 1;
    std::vector<BitVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        BitVec v(cols);
        v.set(f);
        for (std::size_t i = 0; i < R.rows.size(); ++i)
            if (R.rows[i].get(f)) v.set(R.pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(const std::vector<BitVec>& rows, std::size_t cols, const BitVec& b, BitVec& x) {
    std::vector<BitVec> aug;
    aug.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        BitVec r(cols + 1);
        for (auto j : rows[i].ones()) r.set(j);
        if (b.get(i)) r.set(cols);
        aug.push_back(std::move(r));
    }
    Rref R = rref(std::move(aug), cols + 1);
    x = BitVec(cols);
    for (std::size_t i = 0; i < R.rows.size(); ++i) {
        if (R.pivots[i] == cols) return false;
        if (R.rows[i].get(cols)) x.set(R.pivots[i]);
    }
    return true;
}

std::vector<std::size_t> extend_basis(const std::vector<BitVec>& base,
                                      const std::vector<BitVec>& candidates,
                                      std::size_t cols) {
    EchelonBasis eb(cols);
    for (const auto& v : base) eb.insert(v);
    std::vector<std::size_t> picked;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (eb.insert(candidates[i])) picked.push_back(i);
    return picked;
}

std::vector<BitVec> inverse(const std::vector<BitVec>& rows) {
    const std::size_t n = rows.size();
    std::vector<BitVec> aug;
    for (std::size_t i = 0; i < n; ++i) {
        BitVec r(2 * n);
        for (auto j : rows[i].ones()) r.set(j);
        r.set(n + i);
        aug.push_back(std::move(r));
    }
    Rref R = rref(std::move(aug), 2 * n);
    if (R.rows.size() < n || R.pivots[n - 1] >= n) throw std::runtime_error("inverse: singular matrix");
    std::vector<BitVec> inv(n, BitVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (R.rows[i].get(n + j)) inv[i].set(j);
    return inv;
}

} // namespace cubic
