#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wittchar/io.hpp"

namespace wittchar::cli {

namespace {

using io::Json;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Settings merged from --config and the command-line flags; flags win.
class Settings {
public:
    explicit Settings(Json j) : j_(std::move(j)) {}

    bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }
    const Json& raw(const std::string& key) const { return j_[key]; }

    long long integer(const std::string& key, long long fallback) const {
        if (!has(key)) return fallback;
        if (!j_[key].is_number_integer()) throw InputError("config: '" + key + "' must be an integer");
        return j_[key].get<long long>();
    }
    std::string string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        if (!j_[key].is_string()) throw InputError("config: '" + key + "' must be a string");
        return j_[key].get<std::string>();
    }
    bool flag(const std::string& key) const {
        if (!has(key)) return false;
        if (!j_[key].is_boolean()) throw InputError("config: '" + key + "' must be true or false");
        return j_[key].get<bool>();
    }

private:
    Json j_;
};

struct Flags {
    std::string config, seq, method, out, format, series, C, lseries;
    long long p = 0, a = 0, N = 0, D = 0, K = 0, budget = 0, kmin = 0, kmax = 0, corrupt = 0;
    std::vector<long long> modulus;
    bool include_zero = false, log = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config document; flags override its values");
    cmd->add_option("--p", f.p, "odd prime p");
    cmd->add_option("--a", f.a, "residue degree a (q = p^a)");
    cmd->add_option("--prec", f.N, "target precision N");
    cmd->add_option("--sdeg", f.D, "degree D in s (or the polynomial degree bound for eval)");
    cmd->add_option("--ldeg", f.K, "truncation degree K in lambda");
    cmd->add_option("--modulus", f.modulus, "modulus coefficients, ascending")->delimiter(',');
    cmd->add_option("--seq", f.seq, "sequence JSON file");
    cmd->add_option("--out", f.out, "output file (written atomically)");
    cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--budget", f.budget, "cap on enumerated field elements");
    cmd->add_flag("--include-zero", f.include_zero, "include lambda = 0 in the power sums");
}

/// Overlays the flags that were given onto the config document.
Json merged_config(CLI::App* cmd, const Flags& f) {
    Json j = f.config.empty() ? Json::object() : read_json_file(f.config);
    if (!j.is_object()) throw InputError("config: the document must be a JSON object");
    auto given = [&](const char* name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--p")) j["p"] = f.p;
    if (given("--a")) j["a"] = f.a;
    if (given("--prec")) j["N"] = f.N;
    if (given("--sdeg")) j["D"] = f.D;
    if (given("--ldeg")) j["K"] = f.K;
    if (given("--modulus")) j["modulus"] = f.modulus;
    if (given("--seq")) j["seq"] = f.seq;
    if (given("--method")) j["method"] = f.method;
    if (given("--out")) j["out"] = f.out;
    if (given("--format")) j["format"] = f.format;
    if (given("--budget")) j["budget"] = f.budget;
    if (given("--include-zero")) j["include_zero"] = f.include_zero;
    if (given("--series")) j["series"] = f.series;
    if (given("--C")) j["C"] = f.C;
    if (given("--kmin")) j["kmin"] = f.kmin;
    if (given("--kmax")) j["kmax"] = f.kmax;
    if (given("--log")) j["log"] = f.log;
    if (given("--corrupt")) j["corrupt"] = f.corrupt;
    if (given("--lseries")) j["lseries"] = f.lseries;
    return j;
}

/// The sequence document: inline "sequence", a --seq file, or null.
Json sequence_document(const Settings& s) {
    if (s.has("sequence")) return s.raw("sequence");
    if (s.has("seq")) return read_json_file(s.string("seq", ""));
    return nullptr;
}

ContextPtr make_context(const Settings& s, const Json& seq_doc) {
    Json ring = Json::object();
    for (const char* key : {"p", "a", "N", "modulus"}) {
        if (s.has(key))
            ring[key] = s.raw(key);
        else if (seq_doc.is_object() && seq_doc.contains(key))
            ring[key] = seq_doc[key];
    }
    if (!ring.contains("p")) throw InputError("config: p is required (--p or the sequence file)");
    if (!ring.contains("N")) throw InputError("config: N is required (--prec or the sequence file)");
    return io::context_from_json(ring);
}

CharSequence load_sequence(const ContextPtr& ctx, const Json& doc) {
    if (doc.is_null()) return CharSequence(ctx);
    try {
        return io::sequence_from_json(doc, ctx);
    } catch (const InputError& e) {
        throw InputError(std::string("sequence: ") + e.what());
    }
}

int positive(const Settings& s, const char* key, long long fallback, long long min = 1) {
    const long long v = s.integer(key, fallback);
    if (v < min || v > 1000000) throw InputError(std::string("config: '") + key + "' out of range");
    return static_cast<int>(v);
}

LOptions options(const Settings& s) {
    LOptions o;
    const long long b = s.integer("budget", static_cast<long long>(kDefaultBudget));
    if (b < 1) throw InputError("config: budget must be positive");
    o.budget = static_cast<u64>(b);
    o.include_zero = s.flag("include_zero");
    return o;
}

struct Output {
    Json result;
    std::optional<std::string> csv;
    bool failed_check = false;
    std::string check_message;
};

std::string element_text(const PadicElement& x) {
    std::ostringstream os;
    for (size_t i = 0; i < x.coords().size(); ++i) os << (i ? " " : "") << x.coords()[i];
    return os.str();
}

// ---- commands ---------------------------------------------------------------------------

Output cmd_eval(const Settings& s) {
    const Json doc = sequence_document(s);
    const auto ctx = make_context(s, doc);
    const CharSequence seq = load_sequence(ctx, doc);
    const int D = positive(s, "D", 2);
    CharacterEvaluator chi(seq);
    const auto& F = chi.decomposer().field();
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "f,d,chi\n";
    for (const auto& f : enumerate_irreducibles(F, D, options(s).budget)) {
        Json coeffs = Json::array();
        std::string ftext;
        for (size_t k = 0; k < f.coeffs().size(); ++k) {
            coeffs.push_back(f.coeffs()[k].c);
            ftext += (k ? " " : "") + F->to_string(f.coeffs()[k]);
        }
        const PadicElement value = chi.eval(f);
        rows.push_back({{"f", coeffs}, {"d", f.degree()}, {"chi", io::to_json(value)}});
        csv << "\"" << ftext << "\"," << f.degree() << "," << element_text(value) << "\n";
    }
    Output o;
    o.result = {{"sequence", io::to_json(seq)}, {"D", D}, {"rows", rows}};
    o.csv = csv.str();
    return o;
}

Output cmd_lfun(const Settings& s) {
    const Json doc = sequence_document(s);
    const auto ctx = make_context(s, doc);
    const CharSequence seq = load_sequence(ctx, doc);
    const int D = positive(s, "D", 6, 0);
    const std::string method = s.string("method", "euler");
    LOptions opt = options(s);
    PointCache cache(ctx, opt.budget);
    opt.cache = &cache;
    Output o;
    o.result = {{"method", method}, {"D", D}};
    std::ostringstream csv;
    csv << "n,coeffs,precision\n";
    auto emit_csv = [&](const LSeries& L) {
        for (int n = 0; n <= L.D(); ++n)
            csv << n << "," << element_text(L.series[n]) << "," << L.series[n].precision() << "\n";
    };
    if (method == "euler" || method == "exp") {
        const LSeries L = method == "euler" ? l_euler(seq, D, opt) : l_exp(seq, D, opt);
        o.result["L"] = io::to_json(L);
        emit_csv(L);
    } else if (method == "both") {
        const LSeries Le = l_euler(seq, D, opt), Lx = l_exp(seq, D, opt);
        Json disc = Json::array();
        const int required = ctx->precision() - 1;
        bool pass = true;
        for (int n = 0; n <= D; ++n) {
            const int v = Le.series[n].agreement(Lx.series[n]);
            disc.push_back(v);
            pass = pass && v >= required;
        }
        o.result["euler"] = io::to_json(Le);
        o.result["exp"] = io::to_json(Lx);
        o.result["discrepancy"] = disc;
        o.result["required"] = required;
        o.result["pass"] = pass;
        emit_csv(Le);
        if (!pass) {
            o.failed_check = true;
            o.check_message = "Euler product and exp formula disagree below p^" + std::to_string(required);
        }
    } else {
        throw InputError("config: method must be euler, exp or both");
    }
    o.csv = csv.str();
    return o;
}

Output cmd_charseries(const Settings& s) {
    const Json doc = sequence_document(s);
    const auto ctx = make_context(s, doc);
    LSeries L;
    if (s.has("lseries")) {
        const Json& ls = s.raw("lseries");
        const Json series_doc = ls.is_string() ? read_json_file(ls.get<std::string>()) : ls;
        L.series = io::series_from_json(series_doc.contains("series") ? series_doc["series"] : series_doc,
                                        ctx->prime_context());
        L.series.set_var("s");
        L.provenance = "input";
        if (!L.series[0].equals_mod(PadicElement::one(L.series.context()), ctx->precision()))
            throw InputError("lseries: constant term must be 1");
    } else {
        const CharSequence seq = load_sequence(ctx, doc);
        LOptions opt = options(s);
        L = l_euler(seq, positive(s, "D", 6, 0), opt);
    }
    const LSeries C = characteristic_series(L, ctx->degree());
    const QuotientReport q = quotient_check(C, L, ctx->degree(), 1);
    const NewtonPolygon np = newton_polygon(C.series);
    Output o;
    o.result = {{"L", io::to_json(L)},
                {"C", io::to_json(C)},
                {"kmax", characteristic_kmax(ctx->degree(), ctx->precision())},
                {"quotient_check", io::to_json(q)},
                {"newton_polygon", io::to_json(np)}};
    o.csv = io::newton_csv(np);
    if (!q.pass) {
        o.failed_check = true;
        o.check_message = "C(s) = L(s) C(qs) fails below p^" + std::to_string(q.required);
    }
    return o;
}

Output cmd_roundtrip(const Settings& s) {
    constexpr int kLoss = 2;
    const Json doc = sequence_document(s);
    const auto ctx = make_context(s, doc);
    const CharSequence seq = load_sequence(ctx, doc);
    const int K = positive(s, "K", 60);
    TruncatedSeries h = f_map(seq, K);
    if (s.has("corrupt")) {
        const long long k = s.integer("corrupt", 0);
        if (k < 1 || k > K) throw InputError("config: corrupt must lie in 1..K");
        h.set(static_cast<int>(k), h[static_cast<int>(k)] + PadicElement::from_int(ctx, static_cast<long long>(ctx->prime())));
    }
    const CharSequence back = g_map(h);
    const int N = ctx->precision();
    const u64 p = ctx->prime();
    int worst = 0;
    Json first = nullptr;
    for (int i = 1; i <= K; ++i) {
        if (i % static_cast<int>(p) == 0) continue;
        auto it = back.support().find(i);
        const int agree = it == back.support().end() ? 0 : std::min(it->second.agreement(seq.coefficient(i)), N);
        worst = std::max(worst, N - agree);
        if (N - agree > kLoss && first.is_null()) first = i;
    }

    // Trace invariance of psi_p on Log h at the first Teichmueller points of F_q and F_{q^2}.
    const TruncatedSeries c = h.log();
    const TruncatedSeries pc = psi_p(c);
    int trace_worst = 0, trace_count = 0;
    for (int d = 1; d <= 2; ++d) {
        PointTables T(ctx, d, options(s).budget);
        const Extension& E = *T.extension().ext;
        const TruncatedSeries ce = embed(E, c), pe = embed(E, pc);
        for (size_t r = 0; r < std::min<size_t>(T.orbit_count(), 4); ++r) {
            const PadicElement lam = T.representative(r);
            const int agree = trace(ce.evaluate(lam)).agreement(trace(pe.evaluate(lam)));
            trace_worst = std::max(trace_worst, N - std::min(agree, N));
            ++trace_count;
        }
    }
    const bool pass = worst <= kLoss && trace_worst <= kLoss;
    Output o;
    o.result = {{"pass", pass},
                {"K", K},
                {"allowed_loss", kLoss},
                {"worst_loss", worst},
                {"first_mismatch", first},
                {"recovered", io::to_json(back)},
                {"trace_checks", {{"count", trace_count}, {"worst_loss", trace_worst}}}};
    if (!pass) {
        o.failed_check = true;
        o.check_message = first.is_null() ? "psi_p trace invariance failed"
                                           : "c_" + std::to_string(first.get<int>()) + " is not recovered";
    }
    return o;
}

Output cmd_classify(const Settings& s) {
    const std::string kind = s.string("series", "gC");
    const int K = positive(s, "K", kind == "gC" ? 624 : 60);
    TruncatedSeries h;
    if (kind == "gC" || kind == "binomial" || kind == "one") {
        Json ring = Json::object();
        for (const char* key : {"p", "a", "N", "modulus"})
            if (s.has(key)) ring[key] = s.raw(key);
        if (!ring.contains("p")) ring["p"] = 5;
        if (!ring.contains("N")) ring["N"] = 12;
        const auto ctx = io::context_from_json(ring);
        if (kind == "gC") {
            long long num = 2, den = 1;
            if (s.has("C")) {
                const Json& c = s.raw("C");
                if (c.is_number_integer()) {
                    num = c.get<long long>();
                } else if (c.is_string()) {
                    const std::string t = c.get<std::string>();
                    const auto slash = t.find('/');
                    try {
                        num = std::stoll(t.substr(0, slash));
                        if (slash != std::string::npos) den = std::stoll(t.substr(slash + 1));
                    } catch (const std::exception&) {
                        throw InputError("config: C must be an integer or a fraction num/den");
                    }
                } else {
                    throw InputError("config: C must be an integer or a fraction num/den");
                }
            }
            if (num < 0 || den < 1) throw InputError("config: C must be a non-negative fraction");
            h = example_gC(ctx, num, den, {}, K);
        } else if (kind == "binomial") {
            h = binomial_series(PadicElement::from_int(ctx, static_cast<long long>(ctx->prime())), 1, K);
        } else {
            h = TruncatedSeries::one(ctx, K);
        }
    } else {
        h = io::series_from_json(read_json_file(kind));
    }
    if (s.flag("log")) h = h.log();
    const int kmin = positive(s, "kmin", 1);
    const int kmax = positive(s, "kmax", h.K());
    const ConvergenceReport r = classify_convergence(h, kmin, kmax);
    Output o;
    o.result = {{"series", kind}, {"log", s.flag("log")}, {"report", io::to_json(r)}};
    std::ostringstream csv;
    csv << "k,v,censored\n";
    for (int k = kmin; k <= kmax; ++k) {
        const bool resolved = std::binary_search(r.resolved.begin(), r.resolved.end(), k);
        const bool censored = std::binary_search(r.censored.begin(), r.censored.end(), k);
        if (resolved) csv << k << "," << h[k].valuation() << ",0\n";
        if (censored) csv << k << ",," << "1\n";
    }
    o.csv = csv.str();
    return o;
}

void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw InputError("cannot write '" + tmp.string() + "'");
        f << text;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw InputError("cannot write '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw InputError("cannot rename output into '" + path + "'");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-adic characters of 1 + tF_q[[t]] and their L-functions", kToolName};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Flags f;
    struct Command {
        const char* name;
        const char* help;
        Output (*fn)(const Settings&);
    };
    const Command commands[] = {
        {"eval", "character values on irreducible 1-unit polynomials of degree <= D", cmd_eval},
        {"lfun", "L-function by Euler product, exp formula, or both with discrepancies", cmd_lfun},
        {"charseries", "characteristic series, quotient check and Newton polygon", cmd_charseries},
        {"roundtrip", "G o F recovery and psi_p trace invariance", cmd_roundtrip},
        {"classify", "convergence class of a series (gC, binomial, one, or a series file)", cmd_classify},
    };
    std::vector<CLI::App*> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, f);
        subs.push_back(sub);
    }
    subs[1]->add_option("--method", f.method, "euler, exp or both")->check(CLI::IsMember({"euler", "exp", "both"}));
    subs[2]->add_option("--lseries", f.lseries, "L-series JSON file used instead of a sequence");
    subs[2]->add_option("--method", f.method, "unused; accepted for symmetry");
    subs[3]->add_option("--corrupt", f.corrupt, "perturb lambda^k of F(seq) by p before inverting");
    subs[4]->add_option("--series", f.series, "gC, binomial, one, or a series JSON file");
    subs[4]->add_option("--C", f.C, "rate C for gC, an integer or num/den");
    subs[4]->add_option("--kmin", f.kmin, "window start");
    subs[4]->add_option("--kmax", f.kmax, "window end");
    subs[4]->add_flag("--log", f.log, "classify Log of the series");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    size_t which = 0;
    while (which < subs.size() && !subs[which]->parsed()) ++which;
    try {
        const Settings settings(merged_config(subs[which], f));
        Output o = commands[which].fn(settings);
        const std::string format = settings.string("format", "json");
        if (format != "json" && format != "csv") throw InputError("config: format must be json or csv");
        std::string text;
        if (format == "csv") {
            text = *o.csv;
        } else {
            Json doc = {{"metadata", {{"tool", kToolName}, {"version", kVersion}, {"command", commands[which].name}}},
                        {"result", o.result}};
            text = doc.dump(2) + "\n";
        }
        if (settings.has("out"))
            write_atomically(settings.string("out", ""), text);
        else
            out << text;
        if (o.failed_check) {
            err << "check failed: " << o.check_message << "\n";
            return kCheckFailed;
        }
        return kOk;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace wittchar::cli
