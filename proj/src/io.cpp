#include "wittchar/io.hpp"

#include <sstream>

#include "wittchar/errors.hpp"

namespace wittchar::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError((path.empty() ? std::string("document") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(at(path, key), "missing");
    return *it;
}

long long int_value(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_unsigned()) {
        const auto v = j.get<unsigned long long>();
        if (v > static_cast<unsigned long long>(LLONG_MAX)) fail(path, "integer out of range");
        return static_cast<long long>(v);
    }
    fail(path, "expected an integer");
}

int small_int(const Json& j, const std::string& path) {
    const long long v = int_value(j, path);
    if (v < INT_MIN || v > INT_MAX) fail(path, "integer out of range");
    return static_cast<int>(v);
}

std::vector<long long> int_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of integers");
    std::vector<long long> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(int_value(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

void put_ring(Json& j, const Context& ctx) {
    j["p"] = ctx.prime();
    j["a"] = ctx.degree();
    j["N"] = ctx.precision();
    j["modulus"] = ctx.modulus();
}

ContextPtr ring_for(const Json& j, ContextPtr ctx, const std::string& path) {
    if (ctx) return ctx;
    return context_from_json(j, path);
}

}  // namespace

Json to_json(const Context& ctx) {
    Json j = Json::object();
    put_ring(j, ctx);
    return j;
}

ContextPtr context_from_json(const Json& j, const std::string& path) {
    const long long p = int_value(field(j, "p", path), at(path, "p"));
    const int a = j.contains("a") ? small_int(j["a"], at(path, "a")) : 1;
    const int N = small_int(field(j, "N", path), at(path, "N"));
    if (p < 3 || !is_prime(static_cast<u64>(p))) fail(at(path, "p"), "must be an odd prime");
    if (a < 1) fail(at(path, "a"), "must be >= 1");
    if (N < 1) fail(at(path, "N"), "must be >= 1");
    std::vector<u64> modulus;
    if (j.contains("modulus") && !j["modulus"].is_null()) {
        for (long long v : int_array(j["modulus"], at(path, "modulus"))) {
            if (v < 0) fail(at(path, "modulus"), "coefficients must be non-negative");
            modulus.push_back(static_cast<u64>(v));
        }
    }
    try {
        return Context::make(static_cast<u64>(p), a, N, modulus);
    } catch (const InputError& e) {
        fail(path, e.what());
    }
}

Json to_json(const PadicElement& x) {
    Json j = Json::object();
    put_ring(j, *x.context());
    j["N"] = x.precision();
    j["coeffs"] = x.coords();
    return j;
}

PadicElement element_from_json(const ContextPtr& ctx, const Json& j, const std::string& path) {
    const int n = ctx->degree();
    int prec = ctx->capacity();
    std::vector<long long> c;
    if (j.is_number()) {
        c = {int_value(j, path)};
    } else if (j.is_array()) {
        c = int_array(j, path);
    } else if (j.is_object()) {
        c = int_array(field(j, "coeffs", path), at(path, "coeffs"));
        if (j.contains("N")) {
            prec = small_int(j["N"], at(path, "N"));
            if (prec < 0 || prec > ctx->capacity()) fail(at(path, "N"), "precision out of range");
        }
    } else {
        fail(path, "expected an element");
    }
    if (static_cast<int>(c.size()) > n) fail(path, "has more than a = " + std::to_string(n) + " coordinates");
    c.resize(n, 0);
    return PadicElement::from_signed(ctx, c, prec);
}

Json to_json(const CharSequence& seq) {
    Json j = Json::object();
    put_ring(j, *seq.context());
    Json support = Json::array();
    for (const auto& [i, c] : seq.support()) support.push_back({{"i", i}, {"coeffs", c.coords()}, {"N", c.precision()}});
    j["support"] = support;
    const auto& s = seq.schedule();
    j["schedule"] = {{"kind", s.kind_name()}, {"params", {{"num", s.num}, {"den", s.den}, {"offset", s.offset}}}};
    return j;
}

CharSequence sequence_from_json(const Json& j, ContextPtr ctx) {
    if (!j.is_object()) fail("", "a sequence must be a JSON object");
    ctx = ring_for(j, std::move(ctx), "");
    std::map<int, PadicElement> support;
    if (j.contains("support")) {
        const Json& s = j["support"];
        if (!s.is_array()) fail("support", "expected an array");
        for (size_t k = 0; k < s.size(); ++k) {
            const std::string path = "support[" + std::to_string(k) + "]";
            const int i = small_int(field(s[k], "i", path), at(path, "i"));
            if (i < 1 || i % static_cast<long long>(ctx->prime()) == 0)
                fail(at(path, "i"), "index must be positive and prime to p");
            if (support.count(i)) fail(at(path, "i"), "duplicate index " + std::to_string(i));
            const Json& value = s[k].contains("coeffs") ? s[k] : field(s[k], "value", path);
            support.emplace(i, element_from_json(ctx, value, path));
        }
    }
    TailSchedule schedule;
    if (j.contains("schedule") && !j["schedule"].is_null()) {
        const Json& s = j["schedule"];
        const Json& kind = field(s, "kind", "schedule");
        if (!kind.is_string()) fail("schedule.kind", "expected a string");
        schedule.kind = TailSchedule::parse_kind(kind.get<std::string>());
        if (s.contains("params")) {
            const Json& params = s["params"];
            if (params.contains("num")) schedule.num = int_value(params["num"], "schedule.params.num");
            if (params.contains("den")) schedule.den = int_value(params["den"], "schedule.params.den");
            if (params.contains("offset")) schedule.offset = small_int(params["offset"], "schedule.params.offset");
        }
    }
    return CharSequence(ctx, std::move(support), schedule);
}

Json to_json(const TruncatedSeries& s) {
    Json j = Json::object();
    put_ring(j, *s.context());
    j["var"] = s.var();
    j["K"] = s.K();
    Json coeffs = Json::array(), flags = Json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back(c.coords());
        flags.push_back(c.precision());
    }
    j["coeffs"] = coeffs;
    j["precision_flags"] = flags;
    if (s.tail() == kExactTail)
        j["tail"] = "exact";
    else if (s.tail() == kUnknownTail)
        j["tail"] = "unknown";
    else
        j["tail"] = s.tail();
    return j;
}

TruncatedSeries series_from_json(const Json& j, ContextPtr ctx) {
    if (!j.is_object()) fail("", "a series must be a JSON object");
    ctx = ring_for(j, std::move(ctx), "");
    const Json& coeffs = field(j, "coeffs", "");
    if (!coeffs.is_array() || coeffs.empty()) fail("coeffs", "expected a nonempty array");
    const int K = j.contains("K") ? small_int(j["K"], "K") : static_cast<int>(coeffs.size()) - 1;
    if (K < 0 || K + 1 < static_cast<int>(coeffs.size())) fail("K", "fewer slots than coefficients");
    std::vector<int> flags;
    if (j.contains("precision_flags")) {
        for (long long v : int_array(j["precision_flags"], "precision_flags")) flags.push_back(static_cast<int>(v));
        if (flags.size() != coeffs.size()) fail("precision_flags", "length differs from coeffs");
    }
    std::vector<PadicElement> c;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        auto x = element_from_json(ctx, coeffs[k], "coeffs[" + std::to_string(k) + "]");
        if (!flags.empty()) {
            if (flags[k] < 0 || flags[k] > ctx->capacity())
                fail("precision_flags[" + std::to_string(k) + "]", "precision out of range");
            x = PadicElement::from_coords(ctx, x.coords(), flags[k]);
        }
        c.push_back(std::move(x));
    }
    const std::string var = j.contains("var") && j["var"].is_string() ? j["var"].get<std::string>() : "lambda";
    TruncatedSeries s = TruncatedSeries::from_coeffs(ctx, std::move(c), K, var);
    if (j.contains("tail")) {
        const Json& t = j["tail"];
        if (t.is_string() && t == "exact")
            s.set_tail(kExactTail);
        else if (t.is_string() && t == "unknown")
            s.set_tail(kUnknownTail);
        else
            s.set_tail(small_int(t, "tail"));
    }
    return s;
}

Json to_json(const LSeries& L) { return {{"provenance", L.provenance}, {"D", L.D()}, {"series", to_json(L.series)}}; }

Json to_json(const NewtonPolygon& np) {
    Json pts = Json::array(), verts = Json::array(), slopes = Json::array();
    for (const auto& v : np.points) pts.push_back({v.k, v.v});
    for (const auto& v : np.vertices) verts.push_back({v.k, v.v});
    for (const auto& s : np.slopes) slopes.push_back({{"num", s.num}, {"den", s.den}});
    return {{"points", pts}, {"vertices", verts}, {"slopes", slopes}, {"censored", np.censored}};
}

Json to_json(const ConvergenceReport& r) {
    return {{"classification", r.classification},
            {"vacuous", r.vacuous},
            {"k_min", r.k_min},
            {"k_max", r.k_max},
            {"slope_window_min", r.slope_window_min},
            {"log_constant_window_min", r.log_constant_window_min},
            {"slope_terminal", r.slope_terminal},
            {"log_constant", r.log_constant},
            {"resolved", r.resolved},
            {"censored", r.censored}};
}

Json to_json(const QuotientReport& r) {
    return {{"pass", r.pass}, {"required", r.required}, {"discrepancy", r.discrepancy}};
}

std::string newton_csv(const NewtonPolygon& np) {
    std::ostringstream os;
    os << "k,v,censored\n";
    size_t c = 0;
    for (const auto& pt : np.points) {
        while (c < np.censored.size() && np.censored[c] < pt.k) os << np.censored[c++] << ",,1\n";
        os << pt.k << "," << pt.v << ",0\n";
    }
    while (c < np.censored.size()) os << np.censored[c++] << ",,1\n";
    return os.str();
}

}  // namespace wittchar::io
