#include "nhc/problem.hpp"

#include "nhc/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace nhc {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

ojson int_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

ojson point_json(LatticePoint p) { return ojson::array({p.a, p.b}); }

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void atomic_write(const fs::path& target, const std::string& bytes) {
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error("unwritable path: " + target.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw input_error("write failed: " + target.string());
    }
    fs::rename(tmp, target);
}

bool is_int_node(const nlohmann::json& v) { return v.is_number_integer(); }

std::optional<long long> get_ll(const nlohmann::json& v, const std::string& what,
                                std::vector<std::string>& bad) {
    if (!is_int_node(v)) {
        bad.push_back(what + " must be an integer");
        return std::nullopt;
    }
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() >
            static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
        bad.push_back(what + " is out of range");
        return std::nullopt;
    }
    return v.get<long long>();
}

std::optional<LatticePoint> parse_point(const nlohmann::json& v, const std::string& what,
                                        std::vector<std::string>& bad) {
    if (!v.is_array() || v.size() != 2) {
        bad.push_back(what + " must be a pair of integers");
        return std::nullopt;
    }
    const auto a = get_ll(v[0], what + "[0]", bad);
    const auto b = get_ll(v[1], what + "[1]", bad);
    if (!a || !b) return std::nullopt;
    return LatticePoint{*a, *b};
}

std::optional<std::vector<LatticePoint>> parse_points(const nlohmann::json& v,
                                                      const std::string& what,
                                                      std::vector<std::string>& bad) {
    if (!v.is_array() || v.empty()) {
        bad.push_back(what + " must be a non-empty list of integer pairs");
        return std::nullopt;
    }
    std::vector<LatticePoint> pts;
    bool ok = true;
    for (size_t i = 0; i < v.size(); ++i) {
        const auto p = parse_point(v[i], what + "[" + std::to_string(i) + "]", bad);
        if (p)
            pts.push_back(*p);
        else
            ok = false;
    }
    if (!ok) return std::nullopt;
    return pts;
}

bool check_primitive(LatticePoint p, const std::string& what, std::vector<std::string>& bad) {
    if ((p.a == 0 && p.b == 0) || std::gcd(std::abs(p.a), std::abs(p.b)) != 1) {
        bad.push_back("ray not primitive: " + what + " = " + to_string(p));
        return false;
    }
    return true;
}

ojson parse_file_options(const nlohmann::json& o, std::vector<std::string>& bad) {
    ojson out = ojson::object();
    if (!o.is_object()) {
        bad.push_back("options must be an object");
        return out;
    }
    for (const auto& [k, v] : o.items()) {
        if (k == "grid") {
            if (!v.is_array() || v.size() != 2) {
                bad.push_back("options.grid must be a pair of integers");
                continue;
            }
            const auto r = get_ll(v[0], "options.grid[0]", bad);
            const auto s = get_ll(v[1], "options.grid[1]", bad);
            if (r && s) out["grid"] = ojson::array({*r, *s});
        } else if (k == "window" || k == "kcap" || k == "r0" || k == "s0") {
            if (const auto n = get_ll(v, "options." + k, bad)) out[k] = *n;
        } else {
            bad.push_back("options: unknown field \"" + k + "\"");
        }
    }
    return out;
}

void validate_options(const Options& o) {
    std::vector<std::string> bad;
    if (o.gridR < 0 || o.gridS < 0) bad.push_back("grid bounds must be nonnegative");
    if (o.window < 1) bad.push_back("window must be at least 1");
    if (o.kcap < 2) bad.push_back("kcap must be at least 2");
    if (o.r0 < 0 || o.s0 < 0) bad.push_back("r0 and s0 must be nonnegative");
    if (o.format != "json" && o.format != "csv") bad.push_back("format must be json or csv");
    if (!bad.empty()) {
        std::string msg = "invalid options: ";
        for (size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
        throw input_error(msg);
    }
}

ojson options_json(const Options& o) {
    ojson j;
    j["grid"] = ojson::array({o.gridR, o.gridS});
    j["window"] = o.window;
    j["kcap"] = o.kcap;
    j["r0"] = o.r0;
    j["s0"] = o.s0;
    return j;
}

constexpr const char* kIngestedReason = "module operations unavailable for ingested source";
constexpr const char* kNoPairReason = "no good monomial pair among the closure generators";

// Lazily shared pieces so `all` computes each only once.
struct RunContext {
    const ProblemSpec& spec;
    const Options& opts;
    std::optional<HilbertTable> T;
    std::optional<CoeffBundle> B;
    std::optional<JointReductionCertificate> cert;
    bool certSearched = false;

    const HilbertTable& table() {
        if (!T) {
            if (spec.filtration)
                T = HilbertTable::computed(spec.filtration, opts.gridR, opts.gridS);
            else
                T = HilbertTable::ingest_file(spec.tablePath);
        }
        return *T;
    }
    const CoeffBundle& bundle() {
        if (!B) B = make_coeff_bundle(table(), 2, opts.window);
        return *B;
    }
    const JointReductionCertificate* pair() {
        if (!certSearched) {
            certSearched = true;
            if (spec.filtration)
                cert = search_good_pair(*spec.filtration,
                                        default_window(bundle().poly.stabilizationN));
        }
        return cert ? &*cert : nullptr;
    }
};

struct Section {
    ojson j;
    std::string csv;
};

Section closure_section(RunContext& ctx) {
    const auto* F = ctx.spec.filtration.get();
    if (!F) throw input_error(kIngestedReason);
    Section sec;
    sec.csv = "ideal,x,y\n";
    for (const auto& [name, ideal] : {std::make_pair("I", &F->idealI()),
                                      std::make_pair("J", &F->idealJ())}) {
        const MonomialIdeal closed = ideal->closure();
        ojson gens = ojson::array();
        for (const auto& g : closed.generators()) {
            gens.push_back(point_json(g));
            sec.csv += std::string(name) + "," + std::to_string(g.a) + "," +
                       std::to_string(g.b) + "\n";
        }
        sec.j[name] = {{"generators", std::move(gens)}, {"alreadyClosed", ideal->is_closed()}};
    }
    return sec;
}

Section colength_section(RunContext& ctx) {
    Section sec;
    const Int len = ctx.spec.filtration ? ctx.spec.filtration->length(ctx.opts.r0, ctx.opts.s0)
                                        : ctx.table().value(ctx.opts.r0, ctx.opts.s0);
    sec.j["r"] = ctx.opts.r0;
    sec.j["s"] = ctx.opts.s0;
    sec.j["length"] = int_json(len);
    sec.csv = "r,s,length\n" + std::to_string(ctx.opts.r0) + "," + std::to_string(ctx.opts.s0) +
              "," + len.str() + "\n";
    return sec;
}

Section table_section(RunContext& ctx) {
    const HilbertTable& T = ctx.table();
    Section sec;
    sec.j["grid"] = ojson::array({T.rmax(), T.smax()});
    ojson cells = ojson::array();
    sec.csv = "r,s,length\n";
    for (long long r = 0; r <= T.rmax(); ++r)
        for (long long s = 0; s <= T.smax(); ++s) {
            const Int v = T.value(r, s);
            cells.push_back(ojson::array({r, s, int_json(v)}));
            sec.csv += std::to_string(r) + "," + std::to_string(s) + "," + v.str() + "\n";
        }
    sec.j["cells"] = std::move(cells);
    return sec;
}

Section coeffs_section(RunContext& ctx) {
    const HilbertTable& T = ctx.table();
    const CoeffBundle& B = ctx.bundle();
    Section sec;

    ojson frontier = ojson::array();
    for (const auto& [r, s] : B.poly.frontier) frontier.push_back(ojson::array({r, s}));
    sec.j["fit"] = {{"e20", int_json(B.poly.e20)},   {"e11", int_json(B.poly.e11)},
                    {"e02", int_json(B.poly.e02)},   {"e10", int_json(B.poly.e10)},
                    {"e01", int_json(B.poly.e01)},   {"e00", int_json(B.poly.e00)},
                    {"stabilizationN", B.poly.stabilizationN},
                    {"frontierSize", B.poly.frontier.size()},
                    {"frontier", std::move(frontier)}};
    for (const auto& [name, ax] :
         {std::make_pair("axisI", &B.axisI), std::make_pair("axisJ", &B.axisJ)})
        sec.j[name] = {{"e0", int_json(ax->e0)},
                       {"e1", int_json(ax->e1)},
                       {"e2", int_json(ax->e2)},
                       {"stabilizationN", ax->stabilizationN}};
    sec.j["product"] = {{"e0", int_json(B.e0IJ)}, {"e1", int_json(B.e1IJ)},
                        {"e2", int_json(B.e2IJ)}};

    bool crossChecked = false;
    if (ctx.spec.filtration) {
        if (const auto* c = ctx.pair()) {
            mixed_multiplicity_checked(
                B.poly, MonomialIdeal(ctx.spec.filtration->semigroup(), {c->a, c->b}));
            crossChecked = true;
        }
    }
    sec.j["mixedMultiplicity"] = int_json(mixed_multiplicity(B.poly));
    sec.j["mixedMultiplicityCrossChecked"] = crossChecked;

    ojson g = ojson::array(), h = ojson::array();
    std::vector<std::pair<long long, Int>> gVals, hVals;
    for (long long r = 0; r <= T.rmax(); ++r) {
        try {
            gVals.emplace_back(r, g_constant(T, B.poly, r));
        } catch (const stabilization_error&) {
            break;
        }
    }
    for (long long s = 0; s <= T.smax(); ++s) {
        try {
            hVals.emplace_back(s, h_constant(T, B.poly, s));
        } catch (const stabilization_error&) {
            break;
        }
    }
    for (const auto& [r, v] : gVals) g.push_back(ojson::array({r, int_json(v)}));
    for (const auto& [s, v] : hVals) h.push_back(ojson::array({s, int_json(v)}));
    sec.j["g"] = std::move(g);
    sec.j["h"] = std::move(h);

    sec.csv = "name,value\n";
    const auto row = [&sec](const std::string& n, const std::string& v) {
        sec.csv += n + "," + v + "\n";
    };
    row("e20", B.poly.e20.str());
    row("e11", B.poly.e11.str());
    row("e02", B.poly.e02.str());
    row("e10", B.poly.e10.str());
    row("e01", B.poly.e01.str());
    row("e00", B.poly.e00.str());
    row("stabilizationN", std::to_string(B.poly.stabilizationN));
    row("frontierSize", std::to_string(B.poly.frontier.size()));
    row("axisI_e0", B.axisI.e0.str());
    row("axisI_e1", B.axisI.e1.str());
    row("axisI_e2", B.axisI.e2.str());
    row("axisJ_e0", B.axisJ.e0.str());
    row("axisJ_e1", B.axisJ.e1.str());
    row("axisJ_e2", B.axisJ.e2.str());
    row("product_e0", B.e0IJ.str());
    row("product_e1", B.e1IJ.str());
    row("product_e2", B.e2IJ.str());
    row("mixedMultiplicity", mixed_multiplicity(B.poly).str());
    for (const auto& [r, v] : gVals) row("g_" + std::to_string(r), v.str());
    for (const auto& [s, v] : hVals) row("h_" + std::to_string(s), v.str());
    return sec;
}

Section jointred_section(RunContext& ctx) {
    const HilbertTable& T = ctx.table();
    const CoeffBundle& B = ctx.bundle();
    Section sec;
    const long long nrnI = normal_reduction_number(T, Axis::I, B.axisI);
    const long long nrnJ = normal_reduction_number(T, Axis::J, B.axisJ);
    sec.j["normalReductionNumbers"] = {{"I", nrnI}, {"J", nrnJ}};
    sec.csv = "name,value\n";
    sec.csv += "nrn_I," + std::to_string(nrnI) + "\n";
    sec.csv += "nrn_J," + std::to_string(nrnJ) + "\n";

    const JointReductionCertificate* c = ctx.spec.filtration ? ctx.pair() : nullptr;
    if (c) {
        sec.j["pair"] = {{"a", point_json(c->a)},
                         {"b", point_json(c->b)},
                         {"isJoint", c->isJoint},
                         {"isGood", c->isGood},
                         {"jrnZero", c->jrnZero}};
        sec.j["window"] = {{"lower", c->window.lower},
                           {"Rv", c->window.Rv},
                           {"Sv", c->window.Sv},
                           {"negSlack", c->window.negSlack}};
        sec.csv += "found,true\n";
        sec.csv += "a," + std::to_string(c->a.a) + " " + std::to_string(c->a.b) + "\n";
        sec.csv += "b," + std::to_string(c->b.a) + " " + std::to_string(c->b.b) + "\n";
        sec.csv += std::string("isJoint,") + (c->isJoint ? "true" : "false") + "\n";
        sec.csv += std::string("isGood,") + (c->isGood ? "true" : "false") + "\n";
        sec.csv += std::string("jrnZero,") + (c->jrnZero ? "true" : "false") + "\n";
    } else {
        sec.j["pair"] = nullptr;
        sec.j["reason"] = ctx.spec.filtration ? kNoPairReason : kIngestedReason;
        sec.csv += "found,false\n";
        sec.csv += "reason," + csv_quote(sec.j["reason"].get<std::string>()) + "\n";
    }
    return sec;
}

Section h2_section(RunContext& ctx) {
    const HilbertTable& T = ctx.table();
    const CoeffBundle& B = ctx.bundle();
    const JointReductionCertificate* c = ctx.spec.filtration ? ctx.pair() : nullptr;
    const auto cells = cohomology_table(T, B, c, T.rmax(), T.smax(), ctx.opts.kcap);

    Section sec;
    sec.j["mode"] = c ? "three-route" : "formula-only";
    if (!c) sec.j["reason"] = ctx.spec.filtration ? kNoPairReason : kIngestedReason;
    ojson arr = ojson::array();
    sec.csv = "r,s,direct,formula,difference\n";
    for (const auto& cell : cells) {
        ojson e;
        e["r"] = cell.r;
        e["s"] = cell.s;
        e["direct"] = cell.lengthDirect ? int_json(*cell.lengthDirect) : ojson(nullptr);
        e["kStab"] = cell.kStab ? ojson(*cell.kStab) : ojson(nullptr);
        e["formula"] = int_json(cell.lengthFormula);
        e["difference"] = int_json(cell.lengthDifference);
        arr.push_back(std::move(e));
        sec.csv += std::to_string(cell.r) + "," + std::to_string(cell.s) + "," +
                   (cell.lengthDirect ? cell.lengthDirect->str() : std::string()) + "," +
                   cell.lengthFormula.str() + "," + cell.lengthDifference.str() + "\n";
    }
    sec.j["cells"] = std::move(arr);
    return sec;
}

Section check_section(RunContext& ctx, const std::string& id, bool& ok) {
    const HilbertTable& T = ctx.table();
    const CoeffBundle& B = ctx.bundle();
    TheoremParams p;
    p.r0 = ctx.opts.r0;
    p.s0 = ctx.opts.s0;
    p.kcap = ctx.opts.kcap;
    p.Rv = std::min<long long>(6, T.rmax());
    p.Sv = std::min<long long>(6, T.smax());
    p.instance = ctx.spec.name;
    const JointReductionCertificate* c = ctx.spec.filtration ? ctx.pair() : nullptr;
    if (c) p.cert = *c;

    const TheoremReport rep = check_theorem(id, T, B, p);
    ok = rep.ok;

    Section sec;
    sec.j["id"] = rep.id;
    sec.j["instance"] = rep.instance;
    sec.j["ok"] = rep.ok;
    std::string message = rep.summary;
    if (id == "rees7" && c) message += std::string("; jrn ") + (c->jrnZero ? "zero" : "nonzero");
    sec.j["message"] = message;
    ojson conds = ojson::array();
    sec.csv = "condition,verdict,detail\n";
    for (const auto& cond : rep.conditions) {
        ojson cj;
        cj["name"] = cond.name;
        cj["verdict"] = cond.verdict ? ojson(*cond.verdict) : ojson(nullptr);
        cj["detail"] = cond.detail;
        conds.push_back(std::move(cj));
        sec.csv += cond.name + "," +
                   (cond.verdict ? (*cond.verdict ? "true" : "false") : "skipped") + "," +
                   csv_quote(cond.detail) + "\n";
    }
    sec.j["conditions"] = std::move(conds);
    if (c)
        sec.j["certificate"] = {{"a", point_json(c->a)},
                                {"b", point_json(c->b)},
                                {"isGood", c->isGood},
                                {"jrnZero", c->jrnZero}};
    else
        sec.j["certificate"] = nullptr;
    return sec;
}

} // namespace

ProblemSpec parse_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open problem file: " + path);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    nlohmann::json j; // plain json sorts object keys: canonical by construction
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + std::string(e.what()));
    }
    if (!j.is_object()) throw input_error("invalid problem file: top level must be a JSON object");

    std::vector<std::string> bad;
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (k != "semigroup" && k != "ideals" && k != "table" && k != "options")
            bad.push_back("unknown field \"" + k + "\"");
    }
    const bool hasTable = j.contains("table");
    const bool hasSemi = j.contains("semigroup");
    const bool hasIdeals = j.contains("ideals");
    if (hasTable && (hasSemi || hasIdeals))
        bad.push_back("provide exactly one source: either semigroup+ideals or table");
    else if (!hasTable && !hasSemi && !hasIdeals)
        bad.push_back("no source: provide either semigroup+ideals or a table reference");
    else if (!hasTable && !hasIdeals)
        bad.push_back("ideals section missing");
    else if (!hasTable && !hasSemi)
        bad.push_back("semigroup section missing");

    ProblemSpec spec;
    spec.name = fs::path(path).stem().string();
    spec.fileOptions = nullptr;

    std::optional<Semigroup2> S;
    if (hasSemi && !hasTable) {
        const auto& sg = j["semigroup"];
        if (!sg.is_object() || !sg.contains("rays") || sg.size() != 1) {
            bad.push_back("semigroup must be an object with a single \"rays\" field");
        } else {
            const auto& rays = sg["rays"];
            if (!rays.is_array() || rays.size() != 2) {
                bad.push_back("semigroup.rays must list exactly two rays");
            } else {
                auto r1 = parse_point(rays[0], "semigroup.rays[0]", bad);
                auto r2 = parse_point(rays[1], "semigroup.rays[1]", bad);
                bool prim = true;
                if (r1) prim = check_primitive(*r1, "semigroup.rays[0]", bad) && prim;
                if (r2) prim = check_primitive(*r2, "semigroup.rays[1]", bad) && prim;
                if (r1 && r2 && prim) {
                    try {
                        S.emplace(*r1, *r2);
                    } catch (const input_error& e) {
                        bad.push_back(e.what());
                    }
                }
            }
        }
    }

    std::optional<MonomialIdeal> I, J;
    if (hasIdeals && !hasTable) {
        const auto& ids = j["ideals"];
        if (!ids.is_object() || !ids.contains("I") || !ids.contains("J") || ids.size() != 2) {
            bad.push_back("ideals must be an object with exactly the fields \"I\" and \"J\"");
        } else {
            const auto gensI = parse_points(ids["I"], "ideals.I", bad);
            const auto gensJ = parse_points(ids["J"], "ideals.J", bad);
            if (S && gensI) {
                try {
                    I.emplace(*S, *gensI);
                } catch (const input_error& e) {
                    bad.push_back("ideals.I: " + std::string(e.what()));
                }
            }
            if (S && gensJ) {
                try {
                    J.emplace(*S, *gensJ);
                } catch (const input_error& e) {
                    bad.push_back("ideals.J: " + std::string(e.what()));
                }
            }
        }
    }
    if (I && J) {
        try {
            spec.filtration = std::make_shared<NormalFiltration>(*I, *J);
        } catch (const input_error& e) {
            bad.push_back(e.what());
        }
    }

    std::string tableBytes;
    if (hasTable) {
        const auto& t = j["table"];
        if (!t.is_string()) {
            bad.push_back("table must be a path string");
        } else {
            fs::path tp = t.get<std::string>();
            if (tp.is_relative()) tp = fs::path(path).parent_path() / tp;
            spec.tablePath = tp.string();
            std::ifstream tf(tp, std::ios::binary);
            if (!tf)
                bad.push_back("table file not found: " + tp.string());
            else
                tableBytes.assign(std::istreambuf_iterator<char>(tf),
                                  std::istreambuf_iterator<char>());
        }
    }

    if (j.contains("options")) spec.fileOptions = parse_file_options(j["options"], bad);

    if (!bad.empty()) {
        std::string msg = "invalid problem file (" + std::to_string(bad.size()) + " violation" +
                          (bad.size() == 1 ? "" : "s") + "): ";
        for (size_t i = 0; i < bad.size(); ++i) msg += (i ? "; " : "") + bad[i];
        throw input_error(msg);
    }

    nlohmann::json canon = j;
    if (hasTable) canon["table"] = {{"contentHash", fnv1a_hex(tableBytes)}};
    spec.canonical = canon.dump();
    return spec;
}

void apply_file_options(const ProblemSpec& spec, Options& opts,
                        const std::set<std::string>& cliSet) {
    const auto& fo = spec.fileOptions;
    if (!fo.is_object()) return;
    if (fo.contains("grid") && !cliSet.count("grid")) {
        opts.gridR = fo["grid"][0].get<long long>();
        opts.gridS = fo["grid"][1].get<long long>();
    }
    if (fo.contains("window") && !cliSet.count("window"))
        opts.window = fo["window"].get<long long>();
    if (fo.contains("kcap") && !cliSet.count("kcap")) opts.kcap = fo["kcap"].get<long long>();
    if (fo.contains("r0") && !cliSet.count("r0")) opts.r0 = fo["r0"].get<long long>();
    if (fo.contains("s0") && !cliSet.count("s0")) opts.s0 = fo["s0"].get<long long>();
}

RunResult run_command(const ProblemSpec& spec, const std::string& command, const Options& opts) {
    validate_options(opts);
    std::string cmd = command, arg;
    if (const auto sp = command.find(' '); sp != std::string::npos) {
        cmd = command.substr(0, sp);
        arg = command.substr(sp + 1);
    }

    RunContext ctx{spec, opts, {}, {}, {}, false};
    RunResult res;
    ojson& rep = res.report;
    rep["problemHash"] = fnv1a_hex(spec.canonical);
    rep["command"] = command;
    rep["source"] = spec.filtration ? "computed" : "ingested";
    rep["options"] = options_json(opts);

    if (cmd == "closure") {
        Section sec = closure_section(ctx);
        rep["closure"] = std::move(sec.j);
        res.files["closure.csv"] = std::move(sec.csv);
    } else if (cmd == "colength") {
        Section sec = colength_section(ctx);
        rep["colength"] = std::move(sec.j);
        res.files["colength.csv"] = std::move(sec.csv);
    } else if (cmd == "table") {
        Section sec = table_section(ctx);
        rep["table"] = std::move(sec.j);
        res.files["hilbert.csv"] = std::move(sec.csv);
    } else if (cmd == "coeffs") {
        Section sec = coeffs_section(ctx);
        rep["coeffs"] = std::move(sec.j);
        res.files["coeffs.csv"] = std::move(sec.csv);
    } else if (cmd == "jointred") {
        Section sec = jointred_section(ctx);
        rep["jointred"] = std::move(sec.j);
        res.files["jointred.csv"] = std::move(sec.csv);
    } else if (cmd == "h2") {
        Section sec = h2_section(ctx);
        rep["h2"] = std::move(sec.j);
        res.files["h2.csv"] = std::move(sec.csv);
    } else if (cmd == "check") {
        if (arg.empty())
            throw input_error("check needs an id: thm4, rees7, marley, e2max or vanishing14");
        bool ok = true;
        Section sec = check_section(ctx, arg, ok);
        rep["check"] = std::move(sec.j);
        res.files["check.csv"] = std::move(sec.csv);
        res.exitCode = ok ? 0 : 1;
    } else if (cmd == "all") {
        std::string allCsv;
        if (spec.filtration) {
            Section sec = closure_section(ctx);
            rep["closure"] = std::move(sec.j);
            allCsv += "# closure\n" + sec.csv;
        }
        Section tab = table_section(ctx);
        rep["table"] = std::move(tab.j);
        res.files["hilbert.csv"] = tab.csv;
        allCsv += "# table\n" + tab.csv;

        Section co = coeffs_section(ctx);
        rep["coeffs"] = std::move(co.j);
        allCsv += "# coeffs\n" + co.csv;

        Section jr = jointred_section(ctx);
        rep["jointred"] = std::move(jr.j);
        allCsv += "# jointred\n" + jr.csv;

        Section h2 = h2_section(ctx);
        rep["h2"] = std::move(h2.j);
        res.files["h2.csv"] = h2.csv;
        allCsv += "# h2\n" + h2.csv;

        bool allOk = true;
        ojson checks = ojson::array();
        for (const char* id : {"thm4", "rees7", "marley", "e2max", "vanishing14"}) {
            bool ok = true;
            Section sec = check_section(ctx, id, ok);
            checks.push_back(std::move(sec.j));
            allCsv += std::string("# check ") + id + "\n" + sec.csv;
            allOk = allOk && ok;
        }
        rep["checks"] = std::move(checks);
        res.files["all.csv"] = std::move(allCsv);
        res.exitCode = allOk ? 0 : 1;
    } else {
        throw input_error("unknown command: " + cmd +
                          " (expected closure, colength, table, coeffs, jointred, h2, check "
                          "or all)");
    }
    return res;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << h;
    return out.str();
}

std::string cache_key(const ProblemSpec& spec, const std::string& command, const Options& opts) {
    ojson k;
    k["spec"] = spec.canonical;
    k["command"] = command;
    k["options"] = options_json(opts);
    return fnv1a_hex(k.dump());
}

bool cache_load(const std::string& dir, const std::string& key, RunResult& out) {
    std::ifstream in(fs::path(dir) / (key + ".json"), std::ios::binary);
    if (!in) return false;
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
        const ojson env = ojson::parse(text);
        RunResult result;
        result.exitCode = env.at("exitCode").get<int>();
        result.report = env.at("report");
        for (const auto& [name, bytes] : env.at("files").items())
            result.files[name] = bytes.get<std::string>();
        out = std::move(result);
        return true;
    } catch (const std::exception&) {
        return false; // unreadable cache entries are treated as misses
    }
}

void cache_store(const std::string& dir, const std::string& key, const RunResult& result) {
    fs::create_directories(dir);
    ojson env;
    env["exitCode"] = result.exitCode;
    env["report"] = result.report;
    ojson files = ojson::object();
    for (const auto& [name, bytes] : result.files) files[name] = bytes;
    env["files"] = std::move(files);
    atomic_write(fs::path(dir) / (key + ".json"), env.dump() + "\n");
}

void write_report(const RunResult& result, const std::string& dir) {
    fs::create_directories(dir);
    atomic_write(fs::path(dir) / "report.json", result.report.dump(2) + "\n");
    for (const auto& [name, bytes] : result.files) atomic_write(fs::path(dir) / name, bytes);
}

std::string render_stdout(const RunResult& result, const std::string& command,
                          const std::string& format) {
    if (format == "json") return result.report.dump(2) + "\n";
    std::string cmd = command.substr(0, command.find(' '));
    const std::string primary = cmd == "table" ? "hilbert.csv" : cmd + ".csv";
    const auto it = result.files.find(primary);
    if (it == result.files.end())
        throw input_error("no CSV rendering available for command: " + command);
    return it->second;
}

} // namespace nhc
