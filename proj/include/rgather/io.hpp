#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rgather/arrears.hpp"
#include "rgather/error.hpp"
#include "rgather/model.hpp"
#include "rgather/objective.hpp"
#include "rgather/reductions.hpp"

namespace rgather::io {

using json = nlohmann::json;

// Integers beyond 64 bits travel through the DOM as tagged strings and are
// written back as bare JSON numbers by dump().
inline constexpr std::string_view kBigTag = "#bigint:";

namespace detail {

class ExactSaxParser : public nlohmann::detail::json_sax_dom_parser<json> {
public:
    using nlohmann::detail::json_sax_dom_parser<json>::json_sax_dom_parser;

    bool number_float(number_float_t value, const string_t& lexeme) {
        if (lexeme.find_first_of(".eE") == string_t::npos) {
            string_t tagged = std::string(kBigTag) + lexeme;
            return string(tagged);
        }
        return nlohmann::detail::json_sax_dom_parser<json>::number_float(value, lexeme);
    }
};

inline bool is_int_text(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace detail

/// Parse JSON text; integers of any width are kept exact.
inline json parse(std::string_view text) {
    json root;
    detail::ExactSaxParser sax(root, true);
    try {
        json::sax_parse(text, &sax);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInstance, std::string("invalid JSON: ") + e.what());
    }
    return root;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MalformedInstance, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load(const std::string& path) { return parse(read_file(path)); }

/// JSON value for an integer; falls back to a tagged string past 64 bits.
inline json big(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return json(static_cast<std::int64_t>(v));
    return json(std::string(kBigTag) + v.str());
}

template <Coordinate T>
json number(const T& v) {
    if constexpr (std::is_integral_v<T>) {
        return json(v);
    } else {
        return big(BigInt(v));
    }
}

/// Serialize, turning tagged big integers back into plain numbers.
inline std::string dump(const json& j, int indent = 2) {
    std::string s = j.dump(indent);
    const std::string tag = "\"" + std::string(kBigTag);
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (true) {
        auto at = s.find(tag, pos);
        if (at == std::string::npos) break;
        auto end = s.find('"', at + tag.size());
        out.append(s, pos, at - pos);
        out.append(s, at + tag.size(), end - at - tag.size());
        pos = end + 1;
    }
    out.append(s, pos, std::string::npos);
    return out;
}

inline BigInt get_big(const json& v, const std::string& what) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
        return BigInt(v.get<std::int64_t>());
    }
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s.rfind(kBigTag, 0) == 0 && detail::is_int_text(std::string_view(s).substr(kBigTag.size())))
            return BigInt(s.substr(kBigTag.size()));
    }
    throw Error(ErrorKind::MalformedInstance, what + " must be an integer");
}

inline std::int64_t get_int64(const json& v, const std::string& what) {
    BigInt b = get_big(v, what);
    if (b < std::numeric_limits<std::int64_t>::min() || b > std::numeric_limits<std::int64_t>::max())
        throw Error(ErrorKind::MalformedInstance, what + " is out of range");
    return static_cast<std::int64_t>(b);
}

inline int get_int(const json& v, const std::string& what) {
    auto x = get_int64(v, what);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
        throw Error(ErrorKind::MalformedInstance, what + " is out of range");
    return static_cast<int>(x);
}

inline const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw Error(ErrorKind::MalformedInstance, where + " must be an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ErrorKind::MalformedInstance, where + " lacks \"" + key + "\"");
    return *it;
}

inline const json& array_field(const json& obj, const char* key, const std::string& where) {
    const json& a = field(obj, key, where);
    if (!a.is_array()) throw Error(ErrorKind::MalformedInstance, where + "." + key + " must be an array");
    return a;
}

// --- spider -----------------------------------------------------------------

/// Reads {"r", "legs", "users": [{"leg", "x"}], "facilities"?} with exact
/// coordinates, then checks leg ranges and signs.
inline SpiderInstance<BigInt> read_spider(const json& j) {
    SpiderInstance<BigInt> inst;
    inst.r = get_int(field(j, "r", "instance"), "r");
    inst.legs = get_int(field(j, "legs", "instance"), "legs");
    auto points = [&](const json& arr, const std::string& what) {
        std::vector<PointOnSpider<BigInt>> out;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = what + "[" + std::to_string(i) + "]";
            out.push_back({get_int(field(arr[i], "leg", where), where + ".leg"),
                           get_big(field(arr[i], "x", where), where + ".x")});
        }
        return out;
    };
    inst.users = points(array_field(j, "users", "instance"), "users");
    if (j.contains("facilities") && !j["facilities"].is_null())
        inst.facilities = points(array_field(j, "facilities", "instance"), "facilities");
    check_instance(inst);
    return inst;
}

template <Coordinate T>
json write_spider(const SpiderInstance<T>& inst) {
    json j;
    j["r"] = inst.r;
    j["legs"] = inst.legs;
    auto points = [](const std::vector<PointOnSpider<T>>& pts) {
        json arr = json::array();
        for (const auto& p : pts) arr.push_back({{"leg", p.leg}, {"x", number(p.x)}});
        return arr;
    };
    j["users"] = points(inst.users);
    if (!inst.facilities.empty()) j["facilities"] = points(inst.facilities);
    return j;
}

/// True when every coordinate leaves headroom for sums in 64 bits.
inline bool fits_int64(const SpiderInstance<BigInt>& inst) {
    const BigInt limit = BigInt(1) << 61;
    for (const auto& p : inst.users)
        if (p.x >= limit) return false;
    for (const auto& p : inst.facilities)
        if (p.x >= limit) return false;
    return true;
}

template <Coordinate T>
SpiderInstance<T> convert(const SpiderInstance<BigInt>& in) {
    SpiderInstance<T> out;
    out.legs = in.legs;
    out.r = in.r;
    for (const auto& p : in.users) out.users.push_back({p.leg, static_cast<T>(p.x)});
    for (const auto& p : in.facilities) out.facilities.push_back({p.leg, static_cast<T>(p.x)});
    return out;
}

// --- solutions --------------------------------------------------------------

template <Coordinate T>
json write_solution(const Objective<T>& value, const std::optional<Solution<T>>& sol) {
    json j;
    if (!value || !sol) {
        j["value"] = "infeasible";
        return j;
    }
    j["value"] = number(value.value());
    j["clusters"] = sol->clusters;
    if (sol->facility_of) j["facilities"] = *sol->facility_of;
    return j;
}

/// Reads a SolutionFile; nullopt when its value is "infeasible".
inline std::optional<Solution<BigInt>> read_solution(const json& j) {
    const json& v = field(j, "value", "solution");
    if (v.is_string() && v.get<std::string>() == "infeasible") return std::nullopt;
    Solution<BigInt> sol;
    sol.value = get_big(v, "value");
    const json& clusters = array_field(j, "clusters", "solution");
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        if (!clusters[c].is_array())
            throw Error(ErrorKind::MalformedInstance, "clusters[" + std::to_string(c) + "] must be an array");
        std::vector<std::size_t> members;
        for (const auto& u : clusters[c]) {
            auto idx = get_int64(u, "user index");
            if (idx < 0) throw Error(ErrorKind::MalformedInstance, "negative user index");
            members.push_back(static_cast<std::size_t>(idx));
        }
        sol.clusters.push_back(std::move(members));
    }
    if (j.contains("facilities")) {
        sol.facility_of.emplace();
        for (const auto& f : array_field(j, "facilities", "solution")) {
            auto idx = get_int64(f, "facility index");
            if (idx < 0) throw Error(ErrorKind::MalformedInstance, "negative facility index");
            sol.facility_of->push_back(static_cast<std::size_t>(idx));
        }
    }
    return sol;
}

// --- arrears ----------------------------------------------------------------

inline ArrearsInstance read_arrears(const json& j) {
    ArrearsInstance inst;
    const json& duties = array_field(j, "duties", "instance");
    for (std::size_t i = 0; i < duties.size(); ++i) {
        const std::string where = "duties[" + std::to_string(i) + "]";
        if (!duties[i].is_array()) throw Error(ErrorKind::MalformedInstance, where + " must be an array");
        std::vector<PaymentOption> options;
        for (const auto& o : duties[i])
            options.push_back({get_big(field(o, "a", where), where + ".a"), get_big(field(o, "p", where), where + ".p")});
        inst.duties.push_back(std::move(options));
    }
    if (j.contains("budgets")) {
        for (const auto& b : array_field(j, "budgets", "instance"))
            inst.budgets.push_back({get_big(field(b, "b", "budget"), "budget.b"), get_big(field(b, "q", "budget"), "budget.q")});
    }
    check_arrears_instance(inst);
    return inst;
}

inline json write_arrears(const ArrearsInstance& inst) {
    json duties = json::array();
    for (const auto& d : inst.duties) {
        json options = json::array();
        for (const auto& o : d) options.push_back({{"a", big(o.day)}, {"p", big(o.amount)}});
        duties.push_back(std::move(options));
    }
    json budgets = json::array();
    for (const auto& b : inst.budgets) budgets.push_back({{"b", big(b.day)}, {"q", big(b.cap)}});
    return {{"duties", std::move(duties)}, {"budgets", std::move(budgets)}};
}

// --- sat --------------------------------------------------------------------

inline CnfFormula read_sat(const json& j) {
    CnfFormula f;
    f.num_vars = get_int(field(j, "num_vars", "formula"), "num_vars");
    const json& clauses = array_field(j, "clauses", "formula");
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (!clauses[c].is_array() || clauses[c].size() != 3)
            throw Error(ErrorKind::MalformedInstance, "clause " + std::to_string(c + 1) + " must list exactly 3 literals");
        std::array<int, 3> lits{};
        for (std::size_t k = 0; k < 3; ++k) lits[k] = get_int(clauses[c][k], "literal");
        f.clauses.push_back(lits);
    }
    check_formula(f);
    return f;
}

inline json write_sat(const CnfFormula& f) { return {{"num_vars", f.num_vars}, {"clauses", f.clauses}}; }

inline json write_report(const GadgetReport& rep, const std::vector<IdentityCheck>& checks) {
    auto bigs = [](const auto& v) {
        json arr = json::array();
        for (const auto& x : v) arr.push_back(big(BigInt(x)));
        return arr;
    };
    json j;
    j["num_vars"] = rep.num_vars;
    j["num_clauses"] = rep.num_clauses;
    j["base"] = big(rep.base);
    j["side_size"] = big(rep.side_size);
    j["items_per_variable"] = rep.items_per_variable;
    j["clause_weight"] = bigs(rep.clause_weight);
    j["clause_weight_negated"] = bigs(rep.clause_weight_negated);
    j["positive_side_sum"] = bigs(rep.positive_side_sum);
    j["negative_side_sum"] = bigs(rep.negative_side_sum);
    j["side_sum"] = bigs(rep.side_sum);
    j["half_total"] = big(rep.half_total);
    j["half_total_closed_form"] = big(rep.half_total_closed_form);
    j["digit_sums"] = bigs(rep.digit_sums);
    j["budget_caps"] = bigs(rep.budget_caps);
    json digits = json::array();
    for (const auto& d : rep.budget_digits) digits.push_back(bigs(d));
    j["budget_digits"] = std::move(digits);
    json out = json::array();
    for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = std::move(out);
    return j;
}

}  // namespace rgather::io
