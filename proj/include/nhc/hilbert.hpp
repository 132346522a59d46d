// Normal Hilbert tables and exact polynomial fitting.
//
// H(r,s) denotes the colength of the closure of I^r J^s. A table either comes
// from a filtration over the lattice backend ("computed") or is supplied
// externally ("ingested"); ingested tables support only the numerical
// operations. The bivariate normal Hilbert polynomial is fitted exactly over
// the rationals in the binomial basis
//   P(r,s) = e20*C(r+1,2) + e11*r*s + e02*C(s+1,2) - e10*r - e01*s + e00,
// with binomials read as polynomials so P is defined at every r,s >= 0.
#pragma once

#include "nhc/ideal.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nhc {

class HilbertTable {
public:
    static HilbertTable computed(std::shared_ptr<const NormalFiltration> F, long long rmax,
                                 long long smax);
    static HilbertTable ingested(std::vector<std::vector<Int>> values);
    // CSV with header r,s,length (rectangular), or a JSON object with a
    // "values" row-major array; format detected from the content.
    static HilbertTable ingest_file(const std::string& path);

    bool is_computed() const { return F_ != nullptr; }
    long long rmax() const { return rmax_; }
    long long smax() const { return smax_; }
    Int value(long long r, long long s) const;
    // nullptr for ingested sources
    const NormalFiltration* filtration() const { return F_.get(); }
    std::shared_ptr<const NormalFiltration> filtration_ptr() const { return F_; }

private:
    HilbertTable() = default;
    void validate(bool ingestedSource) const;
    std::shared_ptr<const NormalFiltration> F_;
    std::vector<std::vector<Int>> vals_; // vals_[r][s]
    long long rmax_ = -1, smax_ = -1;
};

struct BhattacharyaPoly {
    Int e20, e11, e02, e10, e01, e00;
    long long stabilizationN = 0; // stencil base that passed verification
    // grid cells (r,s) with H(r,s) == P(r,s), in (r,s)-lex order
    std::vector<std::pair<long long, long long>> frontier;
    Int eval(const Int& r, const Int& s) const {
        return e20 * binom2(r + 1) + e11 * r * s + e02 * binom2(s + 1) - e10 * r - e01 * s + e00;
    }
};

// P(n) = e0*C(n+1,2) - e1*n + e2
struct AxisPoly {
    Int e0, e1, e2;
    long long stabilizationN = 0;
    std::vector<long long> frontier; // axis cells with agreement, ascending
    Int eval(const Int& n) const { return e0 * binom2(n + 1) - e1 * n + e2; }
};

enum class Axis { I, J };

BhattacharyaPoly fit_bhattacharya(const HilbertTable& T, long long startN = 2,
                                  long long window = 3);
// Fit the univariate polynomial to values(0), ..., values(nmax).
AxisPoly fit_univariate(const std::function<Int(long long)>& values, long long nmax,
                        long long startN = 2, long long window = 3);
AxisPoly single_normal_poly(const HilbertTable& T, Axis axis, long long startN = 2,
                            long long window = 3);

Int mixed_multiplicity(const BhattacharyaPoly& P);
// Cross-check e11 against the colength of the pair ideal (a,b).
Int mixed_multiplicity_checked(const BhattacharyaPoly& P, const MonomialIdeal& pairIdeal);

// g_r = eventually constant value of H(r,s) - H(0,s) - e11*r*s as s grows
// (two equal consecutive values confirmed by a third); h_s symmetrically.
Int g_constant(const HilbertTable& T, const BhattacharyaPoly& P, long long r);
Int h_constant(const HilbertTable& T, const BhattacharyaPoly& P, long long s);

struct CoeffBundle {
    BhattacharyaPoly poly;
    AxisPoly axisI, axisJ;
    Int e0IJ, e1IJ, e2IJ; // coefficients of the diagonal filtration closure((IJ)^n)
    Int mixed() const { return poly.e11; }
};

CoeffBundle make_coeff_bundle(const HilbertTable& T, long long startN = 2, long long window = 3);

} // namespace nhc
