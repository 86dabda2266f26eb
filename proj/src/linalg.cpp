#include "wittchar/linalg.hpp"

#include <utility>

namespace wittchar::linalg {

std::optional<Matrix> inverse(Matrix a, int n, u64 p, u64 m) {
    Matrix inv(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1 % m;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r * n + col] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int k = 0; k < n; ++k) {
                std::swap(a[piv * n + k], a[col * n + k]);
                std::swap(inv[piv * n + k], inv[col * n + k]);
            }
        u64 s = *inv_mod(a[col * n + col], m);
        for (int k = 0; k < n; ++k) {
            a[col * n + k] = mul_mod(a[col * n + k], s, m);
            inv[col * n + k] = mul_mod(inv[col * n + k], s, m);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            u64 f = a[r * n + col];
            if (f == 0) continue;
            for (int k = 0; k < n; ++k) {
                a[r * n + k] = sub_mod(a[r * n + k], mul_mod(f, a[col * n + k], m), m);
                inv[r * n + k] = sub_mod(inv[r * n + k], mul_mod(f, inv[col * n + k], m), m);
            }
        }
    }
    return inv;
}

std::optional<std::vector<u64>> solve(Matrix a, int n, std::vector<u64> b, u64 p, u64 m) {
    auto inv = inverse(std::move(a), n, p, m);
    if (!inv) return std::nullopt;
    std::vector<u64> x(n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) x[i] = add_mod(x[i], mul_mod((*inv)[i * n + k], b[k] % m, m), m);
    return x;
}

int det_valuation(Matrix a, int n, u64 p, u64 m) {
    int k = 0;
    for (u64 t = m; t > 1; t /= p) ++k;
    int total = 0;
    for (int col = 0; col < n; ++col) {
        // Full pivoting on the entry of least valuation.
        int best_r = -1, best_c = -1, best_v = k;
        for (int r = col; r < n; ++r)
            for (int c = col; c < n; ++c) {
                u64 x = a[r * n + c];
                if (x == 0) continue;
                int v = vp(x, p);
                if (v < best_v) {
                    best_v = v;
                    best_r = r;
                    best_c = c;
                }
            }
        if (best_r < 0) return k;
        total += best_v;
        if (total >= k) return k;
        for (int c = 0; c < n; ++c) std::swap(a[best_r * n + c], a[col * n + c]);
        for (int r = 0; r < n; ++r) std::swap(a[r * n + best_c], a[r * n + col]);
        u64 pv = checked_pow(p, best_v).value();
        u64 unit_inv = *inv_mod(a[col * n + col] / pv, m);
        for (int r = col + 1; r < n; ++r) {
            u64 x = a[r * n + col];
            if (x == 0) continue;
            // x has valuation >= best_v, so x / p^v is integral.
            u64 f = mul_mod(x / pv, unit_inv, m);
            for (int c = col; c < n; ++c)
                a[r * n + c] = sub_mod(a[r * n + c], mul_mod(f, a[col * n + c], m), m);
        }
    }
    return total;
}

std::vector<std::vector<u64>> kernel_mod_p(Matrix a, int rows, int cols, u64 p) {
    for (auto& x : a) x %= p;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i * cols + c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int k = 0; k < cols; ++k) std::swap(a[piv * cols + k], a[r * cols + k]);
        u64 s = *inv_mod(a[r * cols + c], p);
        for (int k = 0; k < cols; ++k) a[r * cols + k] = a[r * cols + k] * s % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i * cols + c] == 0) continue;
            u64 f = a[i * cols + c];
            for (int k = 0; k < cols; ++k)
                a[i * cols + k] = sub_mod(a[i * cols + k], f * a[r * cols + k] % p, p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<u64>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = neg_mod(a[i * cols + f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<int> independent_rows(const Matrix& a, int rows, int cols, u64 p) {
    std::vector<std::vector<u64>> echelon;  // reduced rows with their pivot column
    std::vector<int> pivots, chosen;
    for (int i = 0; i < rows && static_cast<int>(chosen.size()) < cols; ++i) {
        std::vector<u64> v(cols);
        for (int c = 0; c < cols; ++c) v[c] = a[i * cols + c] % p;
        for (size_t e = 0; e < echelon.size(); ++e) {
            u64 f = v[pivots[e]];
            if (!f) continue;
            for (int c = 0; c < cols; ++c) v[c] = sub_mod(v[c], f * echelon[e][c] % p, p);
        }
        int pc = -1;
        for (int c = 0; c < cols; ++c)
            if (v[c]) {
                pc = c;
                break;
            }
        if (pc < 0) continue;
        u64 s = *inv_mod(v[pc], p);
        for (auto& x : v) x = x * s % p;
        echelon.push_back(std::move(v));
        pivots.push_back(pc);
        chosen.push_back(i);
    }
    if (static_cast<int>(chosen.size()) < cols) return {};
    return chosen;
}

}  // namespace wittchar::linalg
