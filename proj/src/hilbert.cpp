#include "nhc/hilbert.hpp"

#include "nhc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace nhc {

namespace {

std::string cell_str(long long r, long long s) {
    return "(" + std::to_string(r) + ", " + std::to_string(s) + ")";
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Int parse_int(const std::string& raw, const std::string& what) {
    const std::string t = trim(raw);
    if (t.empty()) throw input_error("empty " + what + " field");
    try {
        return Int(t);
    } catch (const std::exception&) {
        throw input_error("cannot parse " + what + " value '" + t + "' as an integer");
    }
}

Int json_int(const nlohmann::json& j, const std::string& what) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return parse_int(j.get<std::string>(), what);
    throw input_error(what + " must be an integer or a decimal string");
}

// Exact Gaussian elimination with partial (first nonzero) pivoting.
std::optional<std::vector<Rat>> solve_linear(std::vector<std::vector<Rat>> A,
                                             std::vector<Rat> rhs) {
    const size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || A[row][col] == 0) continue;
            const Rat f = A[row][col] / A[col][col];
            for (size_t k = col; k < n; ++k) A[row][k] -= f * A[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / A[i][i];
    return x;
}

Int require_integral(const Rat& x) {
    if (rat_den(x) != 1)
        throw invariant_error("non-integral coefficient in polynomial fit: " +
                              rat_num(x).str() + "/" + rat_den(x).str());
    return rat_num(x);
}

} // namespace

HilbertTable HilbertTable::computed(std::shared_ptr<const NormalFiltration> F, long long rmax,
                                    long long smax) {
    if (!F) throw input_error("computed table requires a filtration");
    if (rmax < 0 || smax < 0) throw input_error("table bounds must be nonnegative");
    HilbertTable T;
    T.F_ = std::move(F);
    T.rmax_ = rmax;
    T.smax_ = smax;
    T.vals_.assign(static_cast<size_t>(rmax) + 1, {});
    for (long long r = 0; r <= rmax; ++r) {
        auto& row = T.vals_[static_cast<size_t>(r)];
        row.reserve(static_cast<size_t>(smax) + 1);
        for (long long s = 0; s <= smax; ++s) row.push_back(T.F_->length(r, s));
    }
    T.validate(false);
    return T;
}

HilbertTable HilbertTable::ingested(std::vector<std::vector<Int>> values) {
    HilbertTable T;
    T.vals_ = std::move(values);
    if (T.vals_.empty() || T.vals_.front().empty()) throw input_error("ingested table is empty");
    T.rmax_ = static_cast<long long>(T.vals_.size()) - 1;
    T.smax_ = static_cast<long long>(T.vals_.front().size()) - 1;
    T.validate(true);
    return T;
}

HilbertTable HilbertTable::ingest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open table file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
    if (first < text.size() && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const std::exception& ex) {
            throw input_error(std::string("invalid JSON table: ") + ex.what());
        }
        if (!j.contains("values") || !j["values"].is_array())
            throw input_error("JSON table must contain a 'values' array of rows");
        std::vector<std::vector<Int>> vals;
        for (const auto& row : j["values"]) {
            if (!row.is_array()) throw input_error("JSON table rows must be arrays");
            std::vector<Int> v;
            for (const auto& cell : row) v.push_back(json_int(cell, "length"));
            vals.push_back(std::move(v));
        }
        return ingested(std::move(vals));
    }

    // CSV with header r,s,length; rows may come in any order but must fill a
    // complete rectangle anchored at (0,0).
    std::istringstream lines(text);
    std::string line;
    bool sawHeader = false;
    std::map<std::pair<long long, long long>, Int> cells;
    long long rmax = -1, smax = -1;
    size_t lineNo = 0;
    while (std::getline(lines, line)) {
        ++lineNo;
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream fs(t);
        std::string field;
        while (std::getline(fs, field, ',')) fields.push_back(trim(field));
        if (!sawHeader) {
            if (fields.size() != 3 || fields[0] != "r" || fields[1] != "s" ||
                fields[2] != "length")
                throw input_error("table CSV must start with header r,s,length");
            sawHeader = true;
            continue;
        }
        if (fields.size() != 3)
            throw input_error("table CSV line " + std::to_string(lineNo) +
                              " must have exactly three fields");
        const Int rI = parse_int(fields[0], "r");
        const Int sI = parse_int(fields[1], "s");
        const long long r = to_ll(rI), s = to_ll(sI);
        if (r < 0 || s < 0) throw input_error("table indices must be nonnegative");
        const Int len = parse_int(fields[2], "length");
        if (!cells.emplace(std::make_pair(r, s), len).second)
            throw input_error("duplicate table cell " + cell_str(r, s));
        rmax = std::max(rmax, r);
        smax = std::max(smax, s);
    }
    if (!sawHeader) throw input_error("table CSV must start with header r,s,length");
    if (cells.empty()) throw input_error("table CSV has no data rows");
    std::vector<std::vector<Int>> vals(static_cast<size_t>(rmax) + 1);
    for (long long r = 0; r <= rmax; ++r) {
        auto& row = vals[static_cast<size_t>(r)];
        for (long long s = 0; s <= smax; ++s) {
            auto it = cells.find({r, s});
            if (it == cells.end())
                throw input_error("table CSV is missing cell " + cell_str(r, s));
            row.push_back(it->second);
        }
    }
    return ingested(std::move(vals));
}

void HilbertTable::validate(bool ingestedSource) const {
    auto fail = [&](const std::string& msg) -> void {
        if (ingestedSource) throw input_error("invalid ingested table: " + msg);
        throw invariant_error("computed table violates length laws: " + msg);
    };
    const size_t cols = static_cast<size_t>(smax_) + 1;
    for (const auto& row : vals_)
        if (row.size() != cols) fail("table is not rectangular");
    if (vals_[0][0] != 0) fail("length at (0, 0) must be 0");
    for (long long r = 0; r <= rmax_; ++r) {
        for (long long s = 0; s <= smax_; ++s) {
            const Int& v = vals_[static_cast<size_t>(r)][static_cast<size_t>(s)];
            if (v < 0) fail("negative length at " + cell_str(r, s));
            if (r > 0 && v < vals_[static_cast<size_t>(r - 1)][static_cast<size_t>(s)])
                fail("lengths decrease from " + cell_str(r - 1, s) + " to " + cell_str(r, s));
            if (s > 0 && v < vals_[static_cast<size_t>(r)][static_cast<size_t>(s - 1)])
                fail("lengths decrease from " + cell_str(r, s - 1) + " to " + cell_str(r, s));
        }
    }
}

Int HilbertTable::value(long long r, long long s) const {
    if (r < 0 || r > rmax_ || s < 0 || s > smax_)
        throw input_error("table cell " + cell_str(r, s) + " is outside the grid [0, " +
                          std::to_string(rmax_) + "] x [0, " + std::to_string(smax_) + "]");
    return vals_[static_cast<size_t>(r)][static_cast<size_t>(s)];
}

BhattacharyaPoly fit_bhattacharya(const HilbertTable& T, long long startN, long long window) {
    if (startN < 0) throw input_error("fit start index must be nonnegative");
    if (window < 1) throw input_error("fit verification window must be at least 1");
    const long long bound = std::min(T.rmax(), T.smax());
    const long long need = std::max(window, 2LL);
    for (long long N = startN; N + need <= bound; ++N) {
        const std::pair<long long, long long> stencil[6] = {{N, N},     {N + 1, N}, {N, N + 1},
                                                            {N + 2, N}, {N, N + 2}, {N + 1, N + 1}};
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> rhs;
        for (const auto& [r, s] : stencil) {
            const Int rI(r), sI(s);
            A.push_back({Rat(binom2(rI + 1)), Rat(Int(rI * sI)), Rat(binom2(sI + 1)),
                         Rat(Int(-rI)), Rat(Int(-sI)), Rat(1)});
            rhs.emplace_back(T.value(r, s));
        }
        const auto sol = solve_linear(std::move(A), std::move(rhs));
        if (!sol) continue;
        BhattacharyaPoly P;
        P.e20 = require_integral((*sol)[0]);
        P.e11 = require_integral((*sol)[1]);
        P.e02 = require_integral((*sol)[2]);
        P.e10 = require_integral((*sol)[3]);
        P.e01 = require_integral((*sol)[4]);
        P.e00 = require_integral((*sol)[5]);
        bool ok = true;
        for (long long r = N; r <= N + window && ok; ++r)
            for (long long s = N; s <= N + window && ok; ++s)
                ok = (T.value(r, s) == P.eval(Int(r), Int(s)));
        if (!ok) continue;
        if (P.e20 < 1 || P.e02 < 1 || P.e11 < 1)
            throw invariant_error(
                "fitted polynomial has a nonpositive multiplicity coefficient: e20=" +
                P.e20.str() + " e11=" + P.e11.str() + " e02=" + P.e02.str());
        P.stabilizationN = N;
        for (long long r = 0; r <= T.rmax(); ++r)
            for (long long s = 0; s <= T.smax(); ++s)
                if (T.value(r, s) == P.eval(Int(r), Int(s))) P.frontier.emplace_back(r, s);
        return P;
    }
    throw stabilization_error("no stabilization within grid: no stencil base N in [" +
                              std::to_string(startN) + ", " + std::to_string(bound - need) +
                              "] verified on its window; extend the grid beyond " +
                              std::to_string(bound) + " and retry");
}

AxisPoly fit_univariate(const std::function<Int(long long)>& values, long long nmax,
                        long long startN, long long window) {
    if (startN < 0) throw input_error("fit start index must be nonnegative");
    if (window < 1) throw input_error("fit verification window must be at least 1");
    const long long need = std::max(window, 2LL);
    for (long long N = startN; N + need <= nmax; ++N) {
        std::vector<std::vector<Rat>> A;
        std::vector<Rat> rhs;
        for (long long n = N; n <= N + 2; ++n) {
            const Int nI(n);
            A.push_back({Rat(binom2(nI + 1)), Rat(Int(-nI)), Rat(1)});
            rhs.emplace_back(values(n));
        }
        const auto sol = solve_linear(std::move(A), std::move(rhs));
        if (!sol) continue;
        AxisPoly P;
        P.e0 = require_integral((*sol)[0]);
        P.e1 = require_integral((*sol)[1]);
        P.e2 = require_integral((*sol)[2]);
        bool ok = true;
        for (long long n = N; n <= N + window && ok; ++n) ok = (values(n) == P.eval(Int(n)));
        if (!ok) continue;
        if (P.e0 < 1)
            throw invariant_error("fitted axis polynomial has nonpositive multiplicity e0=" +
                                  P.e0.str());
        P.stabilizationN = N;
        for (long long n = 0; n <= nmax; ++n)
            if (values(n) == P.eval(Int(n))) P.frontier.push_back(n);
        return P;
    }
    throw stabilization_error(
        "no stabilization within grid: axis fit found no verified stencil base; extend the axis "
        "beyond " +
        std::to_string(nmax) + " and retry");
}

AxisPoly single_normal_poly(const HilbertTable& T, Axis axis, long long startN, long long window) {
    if (axis == Axis::I)
        return fit_univariate([&T](long long n) { return T.value(n, 0); }, T.rmax(), startN,
                              window);
    return fit_univariate([&T](long long n) { return T.value(0, n); }, T.smax(), startN, window);
}

Int mixed_multiplicity(const BhattacharyaPoly& P) { return P.e11; }

Int mixed_multiplicity_checked(const BhattacharyaPoly& P, const MonomialIdeal& pairIdeal) {
    const Int len = pairIdeal.colength();
    if (len != P.e11)
        throw invariant_error("mixed multiplicity cross-check failed: e11=" + P.e11.str() +
                              " but the joint reduction pair ideal has colength " + len.str());
    return P.e11;
}

namespace {

Int stabilized_constant(const std::function<Int(long long)>& D, long long maxIdx,
                        const std::string& what, const std::string& direction) {
    for (long long t = 0; t + 2 <= maxIdx; ++t) {
        const Int d0 = D(t);
        if (d0 == D(t + 1) && d0 == D(t + 2)) return d0;
    }
    throw stabilization_error(what + " did not stabilize within the grid; extend the table in the " +
                              direction + " direction beyond " + std::to_string(maxIdx) +
                              " and retry");
}

} // namespace

Int g_constant(const HilbertTable& T, const BhattacharyaPoly& P, long long r) {
    if (r < 0 || r > T.rmax()) throw input_error("g constant index out of range");
    const Int rI(r);
    return stabilized_constant(
        [&](long long s) { return T.value(r, s) - T.value(0, s) - P.e11 * rI * Int(s); }, T.smax(),
        "g constant at r=" + std::to_string(r), "s");
}

Int h_constant(const HilbertTable& T, const BhattacharyaPoly& P, long long s) {
    if (s < 0 || s > T.smax()) throw input_error("h constant index out of range");
    const Int sI(s);
    return stabilized_constant(
        [&](long long r) { return T.value(r, s) - T.value(r, 0) - P.e11 * Int(r) * sI; }, T.rmax(),
        "h constant at s=" + std::to_string(s), "r");
}

CoeffBundle make_coeff_bundle(const HilbertTable& T, long long startN, long long window) {
    CoeffBundle B;
    B.poly = fit_bhattacharya(T, startN, window);
    B.axisI = single_normal_poly(T, Axis::I, startN, window);
    B.axisJ = single_normal_poly(T, Axis::J, startN, window);
    B.e0IJ = B.poly.e20 + 2 * B.poly.e11 + B.poly.e02;
    B.e1IJ = B.poly.e10 + B.poly.e01 + B.poly.e11;
    B.e2IJ = B.poly.e00;
    return B;
}

} // namespace nhc
