#pragma once

#include "bethe/classical/slice.hpp"
#include "bethe/core/report.hpp"

namespace bethe {

inline VariableId kappa_var() { return VariableId::make(VarFamily::Kappa, 0, 0, 0); }

/// Rank-one slice W_{-n} with gl_2 shift (-n, n): the curve
/// Z = [[1, z^{-1}],[0,1]] z^mu [[1,0],[kappa z^{-1},1]], and the shift map to W_0.
struct AppendixAResult {
    SeriesMatrix<Polynomial> curve;      // point of Z over C[kappa]
    SeriesWindow<Polynomial> trace;      // tr(C g) restricted to Z
    SeriesWindow<Polynomial> expected;   // h z^{-n} + h kappa z^{n-2} + h^{-1} z^n
    SeriesMatrix<Polynomial> shifted;    // image of Z in GL_2[[z^{-1}]]_1
};

inline AppendixAResult appendix_a_curve(int n_shift, const Scalar& h) {
    if (n_shift < 1) throw PreconditionError("shift must be >= 1");
    if (h == 0) throw PreconditionError("h must be nonzero");
    ShiftVector mu({-n_shift, n_shift});
    int hi = 3 * n_shift + 2;
    auto t = build_slice_matrix(mu, hi);
    // Z: ebar_12 = z^{-1}, gbar_i = z^{d_i}, fbar_21 = kappa z^{-1}
    auto on_curve = [](VariableId v) -> Polynomial {
        if (v.family() == VarFamily::SliceE) return Polynomial(v.level() == 1 ? 1 : 0);
        if (v.family() == VarFamily::SliceF) return v.level() == 1 ? Polynomial::variable(kappa_var()) : Polynomial();
        return Polynomial();
    };
    auto restrict_matrix = [&](const SeriesMatrix<Polynomial>& m, auto&& sub) {
        SeriesMatrix<Polynomial> out;
        for (auto& row : m) {
            out.emplace_back();
            for (auto& e : row) {
                SeriesWindow<Polynomial> s(e.lo(), e.hi());
                for (auto& [r, c] : e.entries()) s.set(r, c.substitute(sub));
                out.back().push_back(std::move(s));
            }
        }
        return out;
    };
    AppendixAResult res{restrict_matrix(t, on_curve), SeriesWindow<Polynomial>(0, 0),
                        SeriesWindow<Polynomial>(-n_shift, hi), {}};
    {
        auto ch = constant_series(h), chi = constant_series(Scalar(1 / h));
        res.trace = series_add(series_convolve(ch, res.curve[0][0]), series_convolve(chi, res.curve[1][1]));
    }
    Polynomial kap = Polynomial::variable(kappa_var());
    auto put = [&](int r, const Polynomial& p) {
        res.expected.set(r, res.expected.coefficient(r) + p);
    };
    put(n_shift, Polynomial(h));
    put(2 - n_shift, kap * h);
    put(-n_shift, Polynomial(Scalar(1) / h));
    res.expected = res.expected.truncated(res.trace.hi());

    // Shift map: u t z^mu u_- -> u t pi(z^mu u_- z^{-mu}); on coordinates
    // fbar^(k) -> fbar^(k+2n), the torus part loses z^mu.
    ShiftVector zero = ShiftVector::zero(2);
    auto t0 = build_slice_matrix(zero, hi - 2 * n_shift);
    auto image = [&](VariableId v) -> Polynomial {
        if (v.family() == VarFamily::SliceE) return Polynomial(v.level() == 1 ? 1 : 0);
        if (v.family() == VarFamily::SliceF) {
            int k = v.level() + 2 * n_shift; // P'_k = P_{k+2n}
            return k == 1 ? kap : Polynomial();
        }
        return Polynomial(); // gbar_i z^{-d_i} = 1 on Z
    };
    res.shifted = restrict_matrix(t0, image);
    return res;
}

inline Report appendix_a_demo(int n_shift, const Scalar& h) {
    auto res = appendix_a_curve(n_shift, h);
    Report rep;
    std::string tag = ".n" + std::to_string(n_shift) + ".h" + h.get_str();
    Json in{{"n", n_shift}, {"h", h.get_str()}};
    Json trace = Json::object();
    for (auto& [r, c] : res.trace.entries()) trace[std::to_string(-r)] = to_json(c);
    rep.add(CheckRecord{"appendixA.trace" + tag, "restricted trace equals h z^{-n} + h kappa z^{n-2} + h^{-1} z^n",
                        in, res.trace == res.expected ? Status::Pass : Status::Fail,
                        Json{{"z_power_to_coefficient", trace}}});
    bool kappa_free = true, constant = true;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (auto& [r, c] : res.shifted[a][b].entries()) {
                if (c.variables().count(kappa_var())) kappa_free = false;
                bool expect_one = (a == b && r == 0) || (a == 0 && b == 1 && r == 1);
                if (!(c == Polynomial(expect_one ? 1 : 0))) constant = false;
            }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            bool expect_one_at0 = a == b, expect_one_at1 = a == 0 && b == 1;
            if (expect_one_at0 && !res.shifted[a][b].entries().count(0)) constant = false;
            if (expect_one_at1 && !res.shifted[a][b].entries().count(1)) constant = false;
        }
    rep.add(CheckRecord{"appendixA.shift-image" + tag, "image of the curve under the shift map is constant",
                        in, kappa_free && constant ? Status::Pass : Status::Fail,
                        Json{{"image", "[[1, z^-1], [0, 1]]"}, {"kappa_free", kappa_free}, {"matches", constant}}});
    bool trace_depends = false;
    for (auto& [r, c] : res.trace.entries())
        if (c.variables().count(kappa_var())) trace_depends = true;
    rep.add(CheckRecord{"appendixA.distinct" + tag,
                        "shifted Bethe algebra and the shift pullback differ on the curve", in,
                        trace_depends && kappa_free ? Status::Pass : Status::Fail,
                        Json{{"bethe_image", trace_depends ? "C[kappa]" : "constants"},
                             {"pullback_image", kappa_free ? "constants" : "non-constant"}}});
    return rep;
}

} // namespace bethe
