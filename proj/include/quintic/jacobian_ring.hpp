#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "arith.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "fp.hpp"

namespace quintic {

struct NonSmoothSpecialization : std::runtime_error {
    int degree;
    explicit NonSmoothSpecialization(int d)
        : std::runtime_error("non-smooth specialization (Hilbert mismatch at degree " +
                             std::to_string(d) + ")"),
          degree(d) {}
};

// Hilbert function of the Jacobian ring of a smooth quintic surface:
// coefficients of (1 + t + t^2 + t^3)^4.
inline const std::array<int, 13>& quintic_hilbert_series() {
    static const std::array<int, 13> h{1, 4, 10, 20, 31, 40, 44, 40, 31, 20, 10, 4, 1};
    return h;
}

namespace detail {

inline std::uint32_t pack_exp4(const std::array<std::uint8_t, 4>& e) {
    return static_cast<std::uint32_t>(e[0]) | (static_cast<std::uint32_t>(e[1]) << 8) |
           (static_cast<std::uint32_t>(e[2]) << 16) | (static_cast<std::uint32_t>(e[3]) << 24);
}

struct DegreeBasis {
    int degree = -1;
    std::vector<std::array<std::uint8_t, 4>> monos;  // grevlex ascending
    std::unordered_map<std::uint32_t, std::uint32_t> index;

    void build(int d) {
        degree = d;
        monos.clear();
        index.clear();
        for (const auto& m : homogeneous_monomials(4, static_cast<unsigned>(d))) {
            std::array<std::uint8_t, 4> e{static_cast<std::uint8_t>(m[0]),
                                          static_cast<std::uint8_t>(m[1]),
                                          static_cast<std::uint8_t>(m[2]),
                                          static_cast<std::uint8_t>(m[3])};
            index.emplace(pack_exp4(e), static_cast<std::uint32_t>(monos.size()));
            monos.push_back(e);
        }
    }
    std::size_t size() const { return monos.size(); }
};

}  // namespace detail

// The Jacobian ring R = F_p[x,y,z,w]/(dF/dx,...,dF/dw) of a degree-5 form F,
// with per-degree monomial bases, normal forms modulo the ideal slices, and
// the exactness checks on the ideal I = <x^2(x-z)^2, y^2(y-z)^2,
// xy(x-z)(y-z), w>.
class JacobianRing {
public:
    explicit JacobianRing(const MPoly<Fp>& F) {
        if (F.nvars() != 4) throw std::invalid_argument("JacobianRing: 4 variables required");
        if (F.is_zero() || !F.is_homogeneous() || F.total_degree() != 5)
            throw std::invalid_argument("JacobianRing: homogeneous quintic required");
        p_ = F.terms().begin()->second.modulus();
        if (p_ < 7) throw std::invalid_argument("JacobianRing: prime too small");
        bar_ = Barrett(p_);
        basis_of(5);
        fdense_ = to_dense(F, 5);
        for (std::size_t v = 0; v < 4; ++v) {
            MPoly<Fp> d = F.derivative(v);
            basis_of(4);
            partials_[v] = d.is_zero() ? std::vector<std::uint64_t>(basis_of(4).size(), 0)
                                       : to_dense(d, 4);
        }
    }

    std::uint64_t prime() const { return p_; }
    const std::vector<std::uint64_t>& f_dense() const { return fdense_; }

    struct GradedPiece {
        std::size_t dim = 0;
        std::vector<std::size_t> free_cols;          // coset-representative monomials
        std::vector<std::int64_t> compress;          // column -> compressed index or -1
        FpRref rref{2, 1};
    };

    const detail::DegreeBasis& basis_of(int d) {
        auto it = bases_.find(d);
        if (it == bases_.end()) {
            it = bases_.emplace(d, detail::DegreeBasis{}).first;
            it->second.build(d);
        }
        return it->second;
    }

    // Graded piece R^d: dimension and coset representatives; throws
    // NonSmoothSpecialization when the slice rank disagrees with the Hilbert
    // function of a smooth quintic.
    const GradedPiece& graded_piece(int d) {
        if (d < 0 || d > 12) throw std::invalid_argument("graded_piece: 0 <= d <= 12 required");
        auto it = pieces_.find(d);
        if (it != pieces_.end()) return it->second;

        const auto& basis = basis_of(d);
        GradedPiece piece;
        piece.rref = FpRref(p_, basis.size());
        if (d >= 4) {
            const auto& mbasis = basis_of(d - 4);
            for (const auto& m : mbasis.monos) {
                for (std::size_t v = 0; v < 4; ++v) {
                    piece.rref.insert(shift_into(partials_[v], 4, m, d));
                }
            }
        }
        piece.dim = basis.size() - piece.rref.rank();
        int expected = quintic_hilbert_series()[static_cast<std::size_t>(d)];
        if (piece.dim != static_cast<std::size_t>(expected)) throw NonSmoothSpecialization(d);
        piece.free_cols = piece.rref.free_cols();
        piece.compress.assign(basis.size(), -1);
        for (std::size_t i = 0; i < piece.free_cols.size(); ++i)
            piece.compress[piece.free_cols[i]] = static_cast<std::int64_t>(i);
        return pieces_.emplace(d, std::move(piece)).first->second;
    }

    // Normal form of a dense degree-d vector: compressed coordinates on the
    // coset representatives.
    std::vector<std::uint64_t> normal_form(int d, std::vector<std::uint64_t> dense) {
        const GradedPiece& piece = graded_piece(d);
        piece.rref.reduce_forward(dense);
        std::vector<std::uint64_t> out(piece.dim, 0);
        for (std::size_t i = 0; i < piece.free_cols.size(); ++i) out[i] = dense[piece.free_cols[i]];
        return out;
    }

    // Dense product of homogeneous dense vectors of degrees da, db.
    std::vector<std::uint64_t> multiply(const std::vector<std::uint64_t>& a, int da,
                                        const std::vector<std::uint64_t>& b, int db) {
        const auto& ba = basis_of(da);
        const auto& bb = basis_of(db);
        const auto& bc = basis_of(da + db);
        std::vector<std::uint64_t> out(bc.size(), 0);
        for (std::size_t i = 0; i < ba.size(); ++i) {
            if (!a[i]) continue;
            for (std::size_t j = 0; j < bb.size(); ++j) {
                if (!b[j]) continue;
                std::array<std::uint8_t, 4> e;
                for (int k = 0; k < 4; ++k)
                    e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(
                        ba.monos[i][static_cast<std::size_t>(k)] +
                        bb.monos[j][static_cast<std::size_t>(k)]);
                std::uint32_t idx = bc.index.at(detail::pack_exp4(e));
                out[idx] = bar_.reduce(out[idx] + bar_.mul(a[i], b[j]));
            }
        }
        return out;
    }

    // Lift compressed degree-d coordinates back to a dense vector supported
    // on the coset-representative monomials.
    std::vector<std::uint64_t> lift(int d, const std::vector<std::uint64_t>& compressed) {
        const GradedPiece& piece = graded_piece(d);
        std::vector<std::uint64_t> dense(basis_of(d).size(), 0);
        for (std::size_t i = 0; i < piece.free_cols.size(); ++i)
            dense[piece.free_cols[i]] = compressed[i];
        return dense;
    }

    std::vector<std::uint64_t> to_dense(const MPoly<Fp>& f, int d) {
        const auto& basis = basis_of(d);
        std::vector<std::uint64_t> out(basis.size(), 0);
        for (auto& [m, c] : f.terms()) {
            if (m.degree() != static_cast<unsigned>(d))
                throw std::invalid_argument("to_dense: inhomogeneous input");
            std::array<std::uint8_t, 4> e{
                static_cast<std::uint8_t>(m[0]), static_cast<std::uint8_t>(m[1]),
                static_cast<std::uint8_t>(m[2]), static_cast<std::uint8_t>(m[3])};
            out[basis.index.at(detail::pack_exp4(e))] = c.value();
        }
        return out;
    }

    // --- the ideal I and the condition-(A) checks -------------------------

    struct IdealBasis {
        std::size_t dim = 0;
        std::vector<std::vector<std::uint64_t>> lifts;  // dense degree-5 vectors
        std::size_t spanning_products = 0;              // before reduction (3*4 + 35)
    };

    // Basis of the image of the degree-5 part of I inside R^5.
    const IdealBasis& ideal_I5_basis() {
        if (i5_.dim != 0 || !i5_.lifts.empty()) return i5_;
        graded_piece(5);
        const auto& b1 = basis_of(1);
        std::vector<std::vector<std::uint64_t>> spanning;
        for (const auto& q : ideal_quartics()) {
            auto qd = to_dense(q, 4);
            for (const auto& m : b1.monos)
                spanning.push_back(shift_into(qd, 4, m, 5));
        }
        // w * all quartic monomials.
        const auto& b4 = basis_of(4);
        for (const auto& m : b4.monos) {
            std::array<std::uint8_t, 4> e = m;
            ++e[3];
            std::vector<std::uint64_t> v(basis_of(5).size(), 0);
            v[basis_of(5).index.at(detail::pack_exp4(e))] = 1;
            spanning.push_back(std::move(v));
        }
        i5_.spanning_products = spanning.size();
        FpRref rref(p_, graded_piece(5).dim);
        std::vector<std::vector<std::uint64_t>> rows;
        for (auto& v : spanning) {
            auto nf = normal_form(5, v);
            if (rref.rank() < graded_piece(5).dim) {
                std::size_t before = rref.rank();
                rref.insert(nf);
                if (rref.rank() > before) rows.push_back(nf);
            }
        }
        i5_.dim = rref.rank();
        for (auto& r : rows) i5_.lifts.push_back(lift(5, r));
        return i5_;
    }

    // Membership test: is the normal form of a dense degree-5 vector inside
    // the span of I^5?
    bool in_I5(const std::vector<std::uint64_t>& dense5) {
        const IdealBasis& I = ideal_I5_basis();
        FpRref rref(p_, graded_piece(5).dim);
        for (auto& l : I.lifts) rref.insert(normal_form(5, l));
        auto nf = normal_form(5, dense5);
        rref.reduce_forward(nf);
        for (auto x : nf)
            if (x) return false;
        return true;
    }

    struct SequenceCheck {
        std::size_t rank = 0;
        std::size_t target = 0;
        bool pass = false;
    };
    struct ConditionAReport {
        SequenceCheck jac1_i0;   // R^1 (x) I^5 -> R^6 surjective
        SequenceCheck jac1_i1;   // R^6 (x) I^5 -> R^11 surjective
        SequenceCheck jac3;      // middle exactness, rank(Koszul) = nullity(mult)
        SequenceCheck jac4;      // R^6 (x) L^2 I^5 -> R^11 (x) I^5 surjective
        bool composite_zero = false;  // Koszul then multiplication is exactly 0
        std::size_t i5_dim = 0;
        bool all_pass() const {
            return jac1_i0.pass && jac1_i1.pass && jac3.pass && jac4.pass && composite_zero;
        }
    };

    ConditionAReport verify_condition_A() {
        ConditionAReport rep;
        const IdealBasis& I = ideal_I5_basis();
        const std::size_t d5 = I.dim;
        rep.i5_dim = d5;
        const std::size_t dim6 = graded_piece(6).dim;    // 44
        const std::size_t dim11 = graded_piece(11).dim;  // 4
        const auto& b1 = basis_of(1);

        // jac1_i0: columns r*g for r in R^1 monomials, g in the I^5 basis.
        {
            FpRankEngine eng(p_, dim6);
            for (const auto& m : b1.monos)
                for (const auto& g : I.lifts) {
                    eng.insert(normal_form(6, shift_into_vec(g, 5, m, 6)));
                    if (eng.rank() == dim6) break;
                }
            rep.jac1_i0 = {eng.rank(), dim6, eng.rank() == dim6};
        }

        // Products NF_11(e_i * g_a) for the R^6 coset monomials e_i; shared by
        // jac1_i1, jac4 and the composite check.
        const GradedPiece& g6 = graded_piece(6);
        std::vector<std::vector<std::array<std::uint64_t, 4>>> nf11(
            dim6, std::vector<std::array<std::uint64_t, 4>>(d5));
        {
            const auto& b6 = basis_of(6);
            for (std::size_t i = 0; i < dim6; ++i) {
                const auto& mono = b6.monos[g6.free_cols[i]];
                for (std::size_t a = 0; a < d5; ++a) {
                    auto prod = shift_into_vec(I.lifts[a], 5, mono, 11);
                    auto nf = normal_form(11, std::move(prod));
                    for (std::size_t k = 0; k < dim11; ++k) nf11[i][a][k] = nf[k];
                }
            }
        }

        // jac1_i1 rank (and the nullity used by jac3).
        std::size_t mult_rank = 0;
        {
            FpRankEngine eng(p_, dim11);
            for (std::size_t i = 0; i < dim6 && eng.rank() < dim11; ++i)
                for (std::size_t a = 0; a < d5 && eng.rank() < dim11; ++a)
                    eng.insert({nf11[i][a].begin(), nf11[i][a].end()});
            mult_rank = eng.rank();
            rep.jac1_i1 = {mult_rank, dim11, mult_rank == dim11};
        }
        const std::size_t nullity = dim6 * d5 - mult_rank;

        // Koszul products NF_6(r*g_a).
        std::vector<std::vector<std::vector<std::uint64_t>>> nf6(
            4, std::vector<std::vector<std::uint64_t>>(d5));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t a = 0; a < d5; ++a)
                nf6[r][a] = normal_form(6, shift_into_vec(I.lifts[a], 5, b1.monos[r], 6));

        // jac3: rank of the Koszul map R^1 (x) L^2 I^5 -> R^6 (x) I^5.
        {
            FpRankEngine eng(p_, dim6 * d5);
            for (std::size_t a = 0; a < d5 && eng.rank() < nullity; ++a)
                for (std::size_t b = a + 1; b < d5 && eng.rank() < nullity; ++b)
                    for (std::size_t r = 0; r < 4 && eng.rank() < nullity; ++r) {
                        std::vector<std::uint64_t> col(dim6 * d5, 0);
                        for (std::size_t i = 0; i < dim6; ++i) {
                            col[i * d5 + b] = nf6[r][a][i];
                            std::uint64_t x = nf6[r][b][i];
                            col[i * d5 + a] = x ? p_ - x : 0;
                        }
                        eng.insert(std::move(col));
                    }
            rep.jac3 = {eng.rank(), nullity, eng.rank() == nullity};
        }

        // Composite (multiplication after Koszul) must vanish identically:
        // (r g_a) g_b - (r g_b) g_a = 0 in R^11.
        {
            bool zero = true;
            for (std::size_t r = 0; r < 4 && zero; ++r)
                for (std::size_t a = 0; a < d5 && zero; ++a)
                    for (std::size_t b = a + 1; b < d5 && zero; ++b) {
                        std::array<std::uint64_t, 4> acc{0, 0, 0, 0};
                        for (std::size_t i = 0; i < dim6; ++i) {
                            std::uint64_t ca = nf6[r][a][i], cb = nf6[r][b][i];
                            for (std::size_t k = 0; k < dim11; ++k) {
                                std::uint64_t plus = bar_.mul(ca, nf11[i][b][k]);
                                std::uint64_t minus = bar_.mul(cb, nf11[i][a][k]);
                                acc[k] = bar_.reduce(acc[k] + plus + (p_ - minus));
                            }
                        }
                        for (std::size_t k = 0; k < dim11; ++k) zero = zero && acc[k] == 0;
                    }
            rep.composite_zero = zero;
        }

        // jac4: columns (b g_a) (x) g_c - (b g_c) (x) g_a in R^11 (x) I^5.
        {
            const std::size_t target = dim11 * d5;
            FpRankEngine eng(p_, target);
            for (std::size_t a = 0; a < d5 && eng.rank() < target; ++a)
                for (std::size_t c = a + 1; c < d5 && eng.rank() < target; ++c)
                    for (std::size_t i = 0; i < dim6 && eng.rank() < target; ++i) {
                        std::vector<std::uint64_t> col(target, 0);
                        for (std::size_t k = 0; k < dim11; ++k) {
                            col[k * d5 + c] = nf11[i][a][k];
                            std::uint64_t x = nf11[i][c][k];
                            col[k * d5 + a] = x ? p_ - x : 0;
                        }
                        eng.insert(std::move(col));
                    }
            rep.jac4 = {eng.rank(), target, eng.rank() == target};
        }
        return rep;
    }

    // The three quartic generators of I (besides w).
    std::vector<MPoly<Fp>> ideal_quartics() const {
        Fp s(0, p_);
        auto X = MPoly<Fp>::variable(4, 0, s), Y = MPoly<Fp>::variable(4, 1, s),
             Z = MPoly<Fp>::variable(4, 2, s);
        MPoly<Fp> xz = X - Z, yz = Y - Z;
        return {X * X * xz * xz, Y * Y * yz * yz, X * Y * xz * yz};
    }

private:
    // Multiply a dense degree-d vector by a single monomial, landing in
    // degree dto.
    std::vector<std::uint64_t> shift_into(const std::vector<std::uint64_t>& v, int d,
                                          const std::array<std::uint8_t, 4>& mono, int dto) {
        return shift_into_vec(v, d, mono, dto);
    }
    std::vector<std::uint64_t> shift_into_vec(const std::vector<std::uint64_t>& v, int d,
                                              const std::array<std::uint8_t, 4>& mono, int dto) {
        const auto& from = basis_of(d);
        const auto& to = basis_of(dto);
        std::vector<std::uint64_t> out(to.size(), 0);
        for (std::size_t i = 0; i < from.size(); ++i) {
            if (!v[i]) continue;
            std::array<std::uint8_t, 4> e;
            for (int k = 0; k < 4; ++k)
                e[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(
                    from.monos[i][static_cast<std::size_t>(k)] + mono[static_cast<std::size_t>(k)]);
            out[to.index.at(detail::pack_exp4(e))] = v[i];
        }
        return out;
    }

    std::uint64_t p_ = 0;
    Barrett bar_;
    std::map<int, detail::DegreeBasis> bases_;
    std::map<int, GradedPiece> pieces_;
    std::vector<std::uint64_t> fdense_;
    std::array<std::vector<std::uint64_t>, 4> partials_;
    IdealBasis i5_;
};

}  // namespace quintic
