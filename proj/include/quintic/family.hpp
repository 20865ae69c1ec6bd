#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "groebner.hpp"
#include "matrix.hpp"
#include "mpoly.hpp"
#include "padic.hpp"
#include "rational.hpp"
#include "upoly.hpp"

namespace quintic {

// The 35 quartic multi-indices (i0,i1,i2,i3), i0+i1+i2+i3 = 4, in grevlex
// order; positions index the d_I coordinates of FamilyParams.
inline const std::vector<std::array<std::uint8_t, 4>>& quartic_multi_indices() {
    static const std::vector<std::array<std::uint8_t, 4>> idx = [] {
        std::vector<std::array<std::uint8_t, 4>> out;
        for (const auto& m : homogeneous_monomials(4, 4))
            out.push_back({static_cast<std::uint8_t>(m[0]), static_cast<std::uint8_t>(m[1]),
                           static_cast<std::uint8_t>(m[2]), static_cast<std::uint8_t>(m[3])});
        return out;
    }();
    return idx;
}

inline std::string multi_index_key(const std::array<std::uint8_t, 4>& e) {
    std::string s;
    for (int k = 0; k < 4; ++k) s += static_cast<char>('0' + e[static_cast<std::size_t>(k)]);
    return s;
}

inline std::size_t multi_index_position(const std::string& key) {
    const auto& idx = quartic_multi_indices();
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (multi_index_key(idx[i]) == key) return i;
    throw std::invalid_argument("unknown quartic multi-index '" + key + "'");
}

// A point of the 44-coordinate parameter space (a_*, b_*, c_*, d_I).
template <typename D>
struct FamilyParams {
    std::array<D, 3> a, b, c;
    std::vector<D> d;  // 35 entries aligned with quartic_multi_indices()

    bool well_formed() const { return d.size() == 35; }
    bool all_zero() const {
        for (auto& x : a) if (!x.is_zero()) return false;
        for (auto& x : b) if (!x.is_zero()) return false;
        for (auto& x : c) if (!x.is_zero()) return false;
        for (auto& x : d) if (!x.is_zero()) return false;
        return true;
    }

    template <typename E, typename Fn>
    FamilyParams<E> map(Fn&& fn) const {
        FamilyParams<E> out;
        for (int i = 0; i < 3; ++i) {
            out.a[static_cast<std::size_t>(i)] = fn(a[static_cast<std::size_t>(i)]);
            out.b[static_cast<std::size_t>(i)] = fn(b[static_cast<std::size_t>(i)]);
            out.c[static_cast<std::size_t>(i)] = fn(c[static_cast<std::size_t>(i)]);
        }
        out.d.reserve(d.size());
        for (auto& x : d) out.d.push_back(fn(x));
        return out;
    }
};

inline FamilyParams<Fp> reduce_params_mod_p(const FamilyParams<PadicNum>& params) {
    return params.template map<Fp>([](const PadicNum& x) { return x.reduce_mod_p(); });
}

// Variable order of the family's ambient ring.
inline const std::vector<std::string>& family_vars() {
    static const std::vector<std::string> v{"x", "y", "z", "w"};
    return v;
}

template <typename D>
struct FamilyPolys {
    MPoly<D> F, G, H;            // in (x, y, z, w)
    std::array<MPoly<D>, 3> L;   // linear forms L1, L2, L3
    UPoly<D> d0, d1, d2;         // finite-chart conic-bundle coefficients
    UPoly<D> e0, e1, e2;         // infinity-chart counterparts
};

// Construction of the family member at the given parameter point: the nodal
// plane quintic G, the quintic surface F = G + wH, and the chart data d_i,
// e_i of the normalized curve.
template <typename D>
FamilyPolys<D> build_family(const FamilyParams<D>& params) {
    if (!params.well_formed()) throw std::invalid_argument("build_family: 35 d_I required");
    const D s = params.a[0].zero();
    const std::size_t n = 4;
    auto X = MPoly<D>::variable(n, 0, s), Y = MPoly<D>::variable(n, 1, s),
         Z = MPoly<D>::variable(n, 2, s), W = MPoly<D>::variable(n, 3, s);

    FamilyPolys<D> out;
    auto lin = [&](const std::array<D, 3>& coef) {
        return X * coef[0] + Y * coef[1] + Z * coef[2];
    };
    out.L = {lin(params.a), lin(params.b), lin(params.c)};
    MPoly<D> xz = X - Z, yz = Y - Z;
    out.G = X * X * xz * xz * out.L[0] + Y * Y * yz * yz * out.L[1] +
            X * Y * xz * yz * out.L[2];
    out.H = MPoly<D>(n, s);
    const auto& idx = quartic_multi_indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::vector<std::uint16_t> e{idx[i][0], idx[i][1], idx[i][2], idx[i][3]};
        out.H.add_term(Monomial(e), params.d[i]);
    }
    out.F = out.G + W * out.H;

    const D z0 = s.zero();
    const auto& A = params.a;
    const auto& B = params.b;
    const auto& C = params.c;
    out.d2 = UPoly<D>(z0, {-(B[0] + B[2]), -(C[0] + C[2]), -(A[0] + A[2])});
    out.d1 = UPoly<D>(z0, {-B[1], B[0] - C[1], -(A[1] - C[0]), A[0]});
    out.d0 = UPoly<D>(z0, {z0, B[1] + B[2], C[1] + C[2], A[1] + A[2]});
    out.e2 = UPoly<D>(z0, {-(A[0] + A[2]), -(C[0] + C[2]), -(B[0] + B[2])});
    out.e1 = UPoly<D>(z0, {A[0], -(A[1] - C[0]), B[0] - C[1], -B[1]});
    out.e0 = UPoly<D>(z0, {z0, A[1] + A[2], C[1] + C[2], B[1] + B[2]});
    return out;
}

// The four nodes of G in the z = 1 plane chart.
inline std::vector<std::array<int, 3>> family_nodes() {
    return {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
}

// ---------------------------------------------------------------------------
// Normalization identity: substituting the parametrization into G lands in
// the ideal of the chart quadric, in both charts.
// ---------------------------------------------------------------------------

template <typename D>
struct NormalizationIdentity {
    bool holds = false;
    MPoly<D> cofactor_sw;   // G(s(w-s), w-s, w-s^2) / (d2 s^2 + d1 s + d0)
    MPoly<D> remainder_sw;
    MPoly<D> cofactor_tu;
    MPoly<D> remainder_tu;
};

// Specialized check in the flat 2-variable ring over a field domain.
template <typename D>
NormalizationIdentity<D> normalization_identity(const FamilyParams<D>& params) {
    FamilyPolys<D> fam = build_family(params);
    const D z0 = params.a[0].zero();
    const std::size_t n = 2;  // (s, w) resp. (t, u)
    auto S = MPoly<D>::variable(n, 0, z0), Wv = MPoly<D>::variable(n, 1, z0);

    auto upoly_to_mpoly = [&](const UPoly<D>& f, std::size_t var) {
        MPoly<D> out(n, z0);
        for (int i = 0; i <= f.degree(); ++i) {
            Monomial m(n);
            out.add_term(m.with_exp(var, static_cast<std::uint16_t>(i)), f.coeff(i));
        }
        return out;
    };
    auto subst_G = [&](const MPoly<D>& gx, const MPoly<D>& gy, const MPoly<D>& gz) {
        // Evaluate G term by term in the flat ring.
        MPoly<D> acc(n, z0);
        for (auto& [m, coef] : fam.G.terms()) {
            MPoly<D> t = MPoly<D>::constant(n, coef);
            for (std::uint16_t k = 0; k < m[0]; ++k) t *= gx;
            for (std::uint16_t k = 0; k < m[1]; ++k) t *= gy;
            for (std::uint16_t k = 0; k < m[2]; ++k) t *= gz;
            acc += t;
        }
        return acc;
    };

    NormalizationIdentity<D> out;
    // Finite chart: (x, y, z) = (s(w-s), w-s, w-s^2).
    MPoly<D> gs = subst_G(S * (Wv - S), Wv - S, Wv - S * S);
    MPoly<D> q = upoly_to_mpoly(fam.d2, 1) * S * S + upoly_to_mpoly(fam.d1, 1) * S +
                 upoly_to_mpoly(fam.d0, 1);
    if (q.is_zero()) {
        out.holds = gs.is_zero();
        out.remainder_sw = gs;
    } else {
        auto [qq, rr] = mpoly_divrem(gs, q);
        out.cofactor_sw = qq;
        out.remainder_sw = rr;
        out.holds = rr.is_zero();
    }
    // Infinity chart. The parametrization is forced by the glue
    // [t0:t1] x u = [s1:w s0] x w^{-1}: (x, y, z) = (t-1, ut(t-1), ut^2-1),
    // landing on the node (1:0:1) at t = 0. The quadric is
    // e2(u) + e1(u) t + e0(u) t^2.
    auto T = S, U = Wv;
    MPoly<D> one = MPoly<D>::constant(n, z0.one());
    MPoly<D> gt = subst_G(T - one, U * T * (T - one), U * T * T - one);
    MPoly<D> q2 = upoly_to_mpoly(fam.e2, 1) + upoly_to_mpoly(fam.e1, 1) * T +
                  upoly_to_mpoly(fam.e0, 1) * T * T;
    if (q2.is_zero()) {
        out.holds = out.holds && gt.is_zero();
        out.remainder_tu = gt;
    } else {
        auto [qq2, rr2] = mpoly_divrem(gt, q2);
        out.cofactor_tu = qq2;
        out.remainder_tu = rr2;
        out.holds = out.holds && rr2.is_zero();
    }
    return out;
}

// Fully symbolic variant over Q: parameters are variables of an 11-variable
// flat ring (s, w, a0..a2, b0..b2, c0..c2).
inline NormalizationIdentity<Rational> normalization_identity_symbolic() {
    // Build parameter "values" as polynomials of the flat ring and reuse the
    // specialized code path with D = MPoly<Rational>.
    // Variables: 0:s 1:w 2..4:a 5..7:b 8..10:c.
    const std::size_t n = 11;
    Rational r0(0L);
    using P = MPoly<Rational>;
    FamilyParams<P> params;
    for (int i = 0; i < 3; ++i) {
        params.a[static_cast<std::size_t>(i)] = P::variable(n, 2 + static_cast<std::size_t>(i), r0);
        params.b[static_cast<std::size_t>(i)] = P::variable(n, 5 + static_cast<std::size_t>(i), r0);
        params.c[static_cast<std::size_t>(i)] = P::variable(n, 8 + static_cast<std::size_t>(i), r0);
    }
    params.d.assign(35, P(n, r0));  // d_I do not enter G or the charts

    // Cannot call normalization_identity<P> directly: division in the nested
    // ring would require inverting polynomial leading coefficients. Flatten:
    // map everything into the 11-variable ring and divide there.
    FamilyPolys<P> fam = build_family(params);
    auto S = P::variable(n, 0, r0), W = P::variable(n, 1, r0);
    auto upoly_flat = [&](const UPoly<P>& f, const P& var) {
        P out(n, r0);
        for (int i = 0; i <= f.degree(); ++i) {
            P t = f.coeff(i);
            for (int k = 0; k < i; ++k) t *= var;
            out += t;
        }
        return out;
    };
    auto subst_G = [&](const P& gx, const P& gy, const P& gz) {
        P acc(n, r0);
        for (auto& [m, coef] : fam.G.terms()) {
            P t = coef;
            for (std::uint16_t k = 0; k < m[0]; ++k) t *= gx;
            for (std::uint16_t k = 0; k < m[1]; ++k) t *= gy;
            for (std::uint16_t k = 0; k < m[2]; ++k) t *= gz;
            acc += t;
        }
        return acc;
    };


    NormalizationIdentity<Rational> out;
    P gs = subst_G(S * (W - S), W - S, W - S * S);
    P q = upoly_flat(fam.d2, W) * S * S + upoly_flat(fam.d1, W) * S + upoly_flat(fam.d0, W);
    auto [qq, rr] = mpoly_divrem(gs, q);
    bool ok1 = rr.is_zero();
    // Glue-derived infinity-chart parametrization (t-1, ut(t-1), ut^2-1)
    // with S playing t and W playing u.
    P gt = subst_G(S - q.one(), W * S * (S - q.one()), W * S * S - q.one());
    P q2 = upoly_flat(fam.e2, W) + upoly_flat(fam.e1, W) * S + upoly_flat(fam.e0, W) * S * S;
    auto [qq2, rr2] = mpoly_divrem(gt, q2);
    bool ok2 = rr2.is_zero();
    out.holds = ok1 && ok2;
    // Remainders are reported via the flag; the cofactors live in the flat
    // ring and are not converted back.
    return out;
}

// ---------------------------------------------------------------------------
// Condition (ii): smoothness of F mod p.
// ---------------------------------------------------------------------------

struct SmoothnessResult {
    bool smooth = false;
    std::optional<std::array<std::uint64_t, 4>> witness;  // projective point, if scanned
};

// Chartwise Groebner emptiness test for V(F, dF/dx, ..., dF/dw) in P^3.
inline SmoothnessResult smoothness_check_Fp(const MPoly<Fp>& F, bool scan_witness = true) {
    if (F.is_zero() || !F.is_homogeneous() || F.total_degree() != 5)
        throw std::invalid_argument("smoothness_check_Fp: homogeneous quintic required");
    std::uint64_t p = F.terms().begin()->second.modulus();
    Fp s(0, p);
    std::vector<MPoly<Fp>> gens5{F};
    for (std::size_t v = 0; v < 4; ++v) gens5.push_back(F.derivative(v));

    SmoothnessResult out;
    out.smooth = true;
    for (std::size_t chart = 0; chart < 4 && out.smooth; ++chart) {
        // Dehomogenize: substitute var chart = 1, renumber the rest into a
        // 3-variable ring.
        std::vector<MPoly<Fp>> gens;
        for (const auto& g : gens5) {
            MPoly<Fp> h(3, s);
            for (auto& [m, c] : g.terms()) {
                std::vector<std::uint16_t> e;
                for (std::size_t v = 0; v < 4; ++v)
                    if (v != chart) e.push_back(m[v]);
                h.add_term(Monomial(e), c);
            }
            if (!h.is_zero()) gens.push_back(h);
        }
        if (gens.empty()) { out.smooth = false; break; }
        if (!ideal_contains_one(gens)) out.smooth = false;
    }
    if (!out.smooth && scan_witness && p <= 2000) {
        // Look for a rational singular point to report.
        auto eval_all = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z,
                            std::uint64_t w) -> bool {
            std::vector<Fp> pt{Fp(x, p), Fp(y, p), Fp(z, p), Fp(w, p)};
            for (const auto& g : gens5)
                if (!g.eval(pt).is_zero()) return false;
            return true;
        };
        for (std::uint64_t x = 0; x < p && !out.witness; ++x)
            for (std::uint64_t y = 0; y < p && !out.witness; ++y)
                for (std::uint64_t z = 0; z < p && !out.witness; ++z) {
                    // projective representatives: last nonzero coordinate 1
                    if (eval_all(x, y, z, 1)) out.witness = {{x, y, z, 1}};
                }
        for (std::uint64_t x = 0; x < p && !out.witness; ++x)
            for (std::uint64_t y = 0; y < p && !out.witness; ++y)
                if (eval_all(x, y, 1, 0)) out.witness = {{x, y, 1, 0}};
        for (std::uint64_t x = 0; x < p && !out.witness; ++x)
            if (eval_all(x, 1, 0, 0)) out.witness = {{x, 1, 0, 0}};
        if (!out.witness && eval_all(1, 0, 0, 0)) out.witness = {{1, 0, 0, 0}};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Condition (iii): the special fiber splits into two components.
// ---------------------------------------------------------------------------

struct SpecialFiberSplit {
    UPoly<Fp> h;     // monic cubic with c^2 h^2 = f mod p
    Fp c;            // square root of the leading unit a0^2
    UPoly<Fp> hhat;  // infinity-chart square root c * u^3 h(1/u)
    UPoly<Fp> f_mod_p;
};

enum class SplitStatus {
    Accepted,
    LeadingDegenerate,  // a0 not a unit mod p
    NonReducedFiber,    // f = 0 mod p
    NotSplit,           // f is not c * h^2
    RepeatedRoots,      // h not squarefree
    WrongDegree,        // deg h != 3
};

inline const char* split_status_name(SplitStatus s) {
    switch (s) {
        case SplitStatus::Accepted: return "accepted";
        case SplitStatus::LeadingDegenerate: return "leading-degenerate";
        case SplitStatus::NonReducedFiber: return "non-reduced-fiber";
        case SplitStatus::NotSplit: return "not-split";
        case SplitStatus::RepeatedRoots: return "repeated-roots";
        case SplitStatus::WrongDegree: return "wrong-degree";
    }
    return "?";
}

template <typename D>
UPoly<D> weierstrass_sextic_poly(const FamilyPolys<D>& fam) {
    return fam.d1 * fam.d1 - fam.d0 * fam.d2 * fam.d2.sample().from_int(4);
}

struct SplitResult {
    SplitStatus status = SplitStatus::NotSplit;
    SpecialFiberSplit data;
};

inline SplitResult special_fiber_split(const FamilyParams<Fp>& params_mod_p) {
    SplitResult out;
    std::uint64_t p = params_mod_p.a[0].modulus();
    if (!params_mod_p.a[0].is_unit()) {
        out.status = SplitStatus::LeadingDegenerate;
        return out;
    }
    FamilyPolys<Fp> fam = build_family(params_mod_p);
    UPoly<Fp> f = weierstrass_sextic_poly(fam);
    if (f.is_zero()) {
        out.status = SplitStatus::NonReducedFiber;
        return out;
    }
    PolySquareRoot<Fp> sq;
    try {
        sq = poly_square_root(f, p);
    } catch (const std::domain_error&) {
        out.status = SplitStatus::NonReducedFiber;
        return out;
    }
    if (!sq.is_square) {
        out.status = SplitStatus::NotSplit;
        return out;
    }
    if (sq.h.degree() != 3) {
        out.status = SplitStatus::WrongDegree;
        return out;
    }
    if (!upoly_is_squarefree(sq.h, p)) {
        out.status = SplitStatus::RepeatedRoots;
        return out;
    }
    out.status = SplitStatus::Accepted;
    out.data.h = sq.h;
    out.data.c = sq.c;
    out.data.hhat = sq.h.reverse(3) * sq.c;
    out.data.f_mod_p = f;
    return out;
}

// ---------------------------------------------------------------------------
// Condition (iv): regularity of the model at the component intersections.
// ---------------------------------------------------------------------------

struct RegularityResult {
    bool pass = false;
    UPoly<Fp> obstruction;  // gcd(h, (f - c~^2 h~^2)/p mod p); trivial iff pass
};

// Core criterion on an explicit sextic over Z/p^N: at every geometric
// intersection point (root of h), the first-order term (f - c~^2 h~^2)/p must
// not vanish. The lift h~ of h is arbitrary; pass/fail does not depend on it.
inline RegularityResult regularity_check_core(const UPoly<PadicNum>& f,
                                              const SpecialFiberSplit& split,
                                              const Int& lift_offset = Int(0)) {
    const PadicNum a0 = f.lc();
    if (a0.precision() < 2)
        throw std::invalid_argument("regularity_check: precision >= 2 required");
    std::uint64_t p = a0.prime();
    int N = a0.precision();
    // Lift h and c into Z/p^N (optionally offset by p * lift_offset to check
    // lift independence).
    PadicNum z0 = a0.zero();
    std::vector<PadicNum> hc;
    for (int i = 0; i <= split.h.degree(); ++i) {
        Int r(static_cast<unsigned long>(split.h.coeff(i).value()));
        if (i <= 1) r += Int(static_cast<unsigned long>(p)) * lift_offset;
        hc.push_back(PadicNum(p, N, r));
    }
    UPoly<PadicNum> hlift(z0, hc);
    PadicNum clift(p, N, Int(static_cast<unsigned long>(split.c.value())));
    UPoly<PadicNum> g = f - hlift * hlift * (clift * clift);
    // Divide by p coefficientwise; every coefficient is divisible by p.
    std::vector<Fp> gb;
    for (int i = 0; i <= g.degree(); ++i) {
        const PadicNum& ci = g.coeff(i);
        if (!ci.is_zero() && ci.valuation() < 1)
            throw std::logic_error("regularity_check: f != c^2 h^2 mod p");
        Int q = ci.residue() / Int(static_cast<unsigned long>(p));
        gb.push_back(Fp(to_u64(mod_floor(q, Int(static_cast<unsigned long>(p)))), p));
    }
    UPoly<Fp> gmodp(Fp(0, p), gb);
    RegularityResult out;
    if (gmodp.is_zero()) {
        // G vanishes identically mod p at first order: every intersection
        // point is non-regular.
        out.pass = false;
        out.obstruction = split.h;
        return out;
    }
    UPoly<Fp> obstruction = upoly_gcd(split.h, gmodp);
    out.obstruction = obstruction;
    out.pass = obstruction.degree() == 0;
    return out;
}

inline RegularityResult regularity_check(const FamilyParams<PadicNum>& params,
                                         const SpecialFiberSplit& split,
                                         const Int& lift_offset = Int(0)) {
    FamilyPolys<PadicNum> fam = build_family(params);
    return regularity_check_core(weierstrass_sextic_poly(fam), split, lift_offset);
}

// ---------------------------------------------------------------------------
// Node fibers (the eight sections).
// ---------------------------------------------------------------------------

struct NodeFibers {
    PadicNum alpha1, alpha2;  // pair 1: (s, w) = (alpha, alpha)
    PadicNum beta1, beta2;    // pair 2: (s, w) = (0, beta)
    PadicNum gamma1, gamma2;  // pair 3: (t, u) = (0, gamma)
    PadicNum delta1, delta2;  // pair 4: (s, w) = (1, delta)
};

struct NodeFiberResult {
    bool accepted = false;
    std::string reject_reason;
    NodeFibers fibers;
};

inline NodeFiberResult node_fibers(const FamilyParams<PadicNum>& params) {
    NodeFiberResult out;
    const auto& A = params.a;
    const auto& B = params.b;
    const auto& C = params.c;
    struct Quad {
        const char* name;
        PadicNum qa, qb, qc;
        PadicNum* r1;
        PadicNum* r2;
    };
    std::array<Quad, 4> quads{
        Quad{"PQ-1", A[2], C[2], B[2], &out.fibers.alpha1, &out.fibers.alpha2},
        Quad{"PQ-2", A[1] + A[2], C[1] + C[2], B[1] + B[2], &out.fibers.beta1,
             &out.fibers.beta2},
        Quad{"PQ-3", B[0] + B[2], C[0] + C[2], A[0] + A[2], &out.fibers.gamma1,
             &out.fibers.gamma2},
        Quad{"PQ-4", A[0] + A[1] + A[2], C[0] + C[1] + C[2], B[0] + B[1] + B[2],
             &out.fibers.delta1, &out.fibers.delta2}};
    for (auto& q : quads) {
        if (!q.qa.is_unit()) {
            out.reject_reason = std::string(q.name) + ": non-unit leading coefficient";
            return out;
        }
        auto roots = hensel_quadratic_roots(q.qa, q.qb, q.qc);
        if (roots.status != QuadraticRootStatus::TwoRoots) {
            out.reject_reason = std::string(q.name) + ": sections not rational at this sigma";
            return out;
        }
        *q.r1 = roots.r1;
        *q.r2 = roots.r2;
    }
    out.accepted = true;
    return out;
}

// ---------------------------------------------------------------------------
// Condition (v): reduction pattern of the sections.
// ---------------------------------------------------------------------------

struct IntersectionData {
    int meeting_number = 0;        // (D'_1 . D'_2)
    std::array<int, 4> epsP{0, 0, 0, 0};  // component sign of P_i (+1 <-> D_1)
    std::array<int, 4> epsQ{0, 0, 0, 0};
    std::vector<int> eligible;     // indices (1-based) with epsP = -epsQ
    bool condition_v = false;
    std::array<int, 3> subset{0, 0, 0};  // chosen {i1, i2, i3} when condition_v
};

struct ReductionPatternError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Component sign of a section through the finite chart: +1 for D_1 = {Y = c h},
// -1 for D_2 = {Y = -c h}.
inline int section_sign_finite(const FamilyPolys<PadicNum>& fam, const SpecialFiberSplit& split,
                               const PadicNum& s, const PadicNum& w) {
    PadicNum chart = fam.d2.eval(w) * s * s + fam.d1.eval(w) * s + fam.d0.eval(w);
    if (!chart.is_zero())
        throw ReductionPatternError("section fails its chart equation (precision loss?)");
    Fp wbar = w.reduce_mod_p();
    Fp ch = split.c * split.h.eval(wbar);
    if (ch.is_zero())
        throw ReductionPatternError("section through component intersection");
    PadicNum y = (fam.d2.eval(w) * s) * s.from_int(2) + fam.d1.eval(w);
    Fp ybar = y.reduce_mod_p();
    if (ybar == ch) return +1;
    if (ybar == -ch) return -1;
    throw ReductionPatternError("Y is not +-c h at the section (internal inconsistency)");
}

// Same in the (t, u) chart. On the curve Yhat = 2 e0 t + e1 satisfies
// Yhat = -u^3 Y, so the component D_1 = {Y = c h} appears as {Yhat = -hhat}.
inline int section_sign_infinity(const FamilyPolys<PadicNum>& fam, const SpecialFiberSplit& split,
                                 const PadicNum& t, const PadicNum& u) {
    PadicNum chart = fam.e2.eval(u) + fam.e1.eval(u) * t + fam.e0.eval(u) * t * t;
    if (!chart.is_zero())
        throw ReductionPatternError("section fails its chart equation (precision loss?)");
    Fp ubar = u.reduce_mod_p();
    Fp hh = split.hhat.eval(ubar);
    if (hh.is_zero())
        throw ReductionPatternError("section through component intersection");
    PadicNum yhat = fam.e0.eval(u) * t * t.from_int(2) + fam.e1.eval(u);
    Fp yb = yhat.reduce_mod_p();
    if (yb == -hh) return +1;
    if (yb == hh) return -1;
    throw ReductionPatternError("Yhat is not +-hhat at the section (internal inconsistency)");
}

inline IntersectionData reduction_pattern(const FamilyParams<PadicNum>& params,
                                          const NodeFibers& fibers,
                                          const SpecialFiberSplit& split) {
    FamilyPolys<PadicNum> fam = build_family(params);
    auto eps_finite = [&](const PadicNum& s, const PadicNum& w) {
        return section_sign_finite(fam, split, s, w);
    };
    auto eps_infinity = [&](const PadicNum& t, const PadicNum& u) {
        return section_sign_infinity(fam, split, t, u);
    };

    IntersectionData out;
    PadicNum zero = params.a[0].zero();
    PadicNum one = params.a[0].one();
    out.epsP[0] = eps_finite(fibers.alpha1, fibers.alpha1);
    out.epsQ[0] = eps_finite(fibers.alpha2, fibers.alpha2);
    out.epsP[1] = eps_finite(zero, fibers.beta1);
    out.epsQ[1] = eps_finite(zero, fibers.beta2);
    out.epsP[2] = eps_infinity(zero, fibers.gamma1);
    out.epsQ[2] = eps_infinity(zero, fibers.gamma2);
    out.epsP[3] = eps_finite(one, fibers.delta1);
    out.epsQ[3] = eps_finite(one, fibers.delta2);
    for (int i = 0; i < 4; ++i)
        if (out.epsP[static_cast<std::size_t>(i)] == -out.epsQ[static_cast<std::size_t>(i)])
            out.eligible.push_back(i + 1);
    out.condition_v = out.eligible.size() >= 3;
    if (out.condition_v)
        out.subset = {out.eligible[0], out.eligible[1], out.eligible[2]};
    out.meeting_number = 3;

    return out;
}

// The component meeting number (D'_1 . D'_2) on the regular model: the three
// roots of h, all in the finite chart (hhat(0) = c != 0).
inline int component_meeting_number(const SpecialFiberSplit& split, bool regularity_passed) {
    if (!regularity_passed)
        throw std::invalid_argument("component_meeting_number: regularity must hold");
    if (split.h.degree() != 3)
        throw std::invalid_argument("component_meeting_number: deg h != 3");
    if (split.hhat.eval(Fp(0, split.c.modulus())).is_zero())
        throw std::logic_error("component_meeting_number: unreachable infinity-chart meeting");
    return 3;
}

// ---------------------------------------------------------------------------
// Remark-3.4 intersection matrix for plane curves of degrees e_1..e_N.
// ---------------------------------------------------------------------------

struct PlaneIntersectionMatrix {
    std::vector<std::vector<Int>> m;
    Int det;
    Int closed_form;
};

inline PlaneIntersectionMatrix plane_intersection_matrix(const std::vector<long>& degrees) {
    for (long e : degrees)
        if (e < 1) throw std::invalid_argument("plane_intersection_matrix: degrees must be >= 1");
    std::size_t n = degrees.size();
    PlaneIntersectionMatrix out;
    Int total(0);
    for (long e : degrees) total += e;
    out.m.assign(n, std::vector<Int>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            if (j == k)
                out.m[j][k] = Int(degrees[j]) * (Int(1) - (total - degrees[j]));
            else
                out.m[j][k] = Int(degrees[j]) * Int(degrees[k]);
        }
    // Exact determinant over Q.
    Matrix<Rational> mq(n, n, Rational(0L));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) mq(j, k) = Rational(out.m[j][k]);
    Rational d = matrix_det(mq);
    if (d.denominator() != 1) throw std::logic_error("plane_intersection_matrix: non-integral det");
    out.det = d.numerator();
    Int cf(1);
    for (long e : degrees) cf *= e;
    Int base = Int(1) - total;
    for (std::size_t k = 0; k + 1 < n; ++k) cf *= base;
    out.closed_form = cf;
    return out;
}

// ---------------------------------------------------------------------------
// The boundary certificate of (B-2)(2).
// ---------------------------------------------------------------------------

struct BoundaryCertificate {
    PadicNum sum;   // sum_k r_k eps_k over the chosen subset
    int valuation;  // capped at the working precision
    PadicNum n2;    // boundary coefficient -(sum) / meeting number
    bool nonzero;
};

inline BoundaryCertificate b2_certificate(const IntersectionData& inter,
                                          const std::vector<PadicNum>& r,
                                          const std::array<int, 3>& subset) {
    if (r.size() != 3) throw std::invalid_argument("b2_certificate: relation vector of length 3");
    std::uint64_t p = r[0].prime();
    if (p < 7)
        throw std::invalid_argument("b2_certificate: p >= 7 required (meeting number 3 must be invertible)");
    PadicNum sum = r[0].zero();
    for (std::size_t k = 0; k < 3; ++k) {
        int i = subset[k];
        int eps = inter.epsP[static_cast<std::size_t>(i - 1)];
        sum += eps >= 0 ? r[k] : -r[k];
    }
    BoundaryCertificate out{sum, sum.valuation(), sum.zero(), false};
    PadicNum meet = sum.from_int(inter.meeting_number);
    out.n2 = -(sum * meet.inv());
    out.nonzero = !sum.is_zero();
    return out;
}

// General solver for the system (4-1) on models with exceptional curves:
// unknowns x_l; equations indexed by the components D'_k and E_s. Returns
// either a solution or the insolubility certificate (q_k, q'_s).
struct BoundarySystemResult {
    bool no_solution = false;
    std::vector<PadicNum> x;            // solution when one exists
    std::vector<PadicNum> certificate;  // (q_k, q'_s) otherwise
};

inline BoundarySystemResult boundary_system_solve(const Matrix<PadicNum>& e_dot_d,
                                                  const Matrix<PadicNum>& e_dot_e,
                                                  const std::vector<PadicNum>& r_pq_dot_d,
                                                  const std::vector<PadicNum>& r_pq_dot_e) {
    std::size_t l = e_dot_d.cols();
    if (e_dot_e.cols() != l) throw std::invalid_argument("boundary_system_solve: shape mismatch");
    PadicNum sample = e_dot_d.sample();
    Matrix<PadicNum> A(e_dot_d.rows() + e_dot_e.rows(), l, sample);
    std::vector<PadicNum> b;
    for (std::size_t i = 0; i < e_dot_d.rows(); ++i) {
        for (std::size_t j = 0; j < l; ++j) A(i, j) = e_dot_d(i, j);
        b.push_back(-r_pq_dot_d[i]);
    }
    for (std::size_t i = 0; i < e_dot_e.rows(); ++i) {
        for (std::size_t j = 0; j < l; ++j) A(e_dot_d.rows() + i, j) = e_dot_e(i, j);
        b.push_back(-r_pq_dot_e[i]);
    }
    auto res = solve_mod_pn(A, b);
    BoundarySystemResult out;
    if (res.solvable) {
        out.x = res.x;
    } else {
        out.no_solution = true;
        out.certificate = res.certificate;
    }
    return out;
}

}  // namespace quintic
