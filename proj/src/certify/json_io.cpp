#include "telecert/certify/json_io.hpp"

#include <sstream>

namespace telecert {

namespace {

std::string base_name(BaseKind b) { return b == BaseKind::Rational ? "rational" : "qpower"; }

Json string_list(const std::vector<std::string>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs)
        a.push_back(x);
    return a;
}

Json rational_list(const std::vector<Rational>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs)
        a.push_back(x.get_str());
    return a;
}

std::vector<std::string> formatted(const Tower& t, const std::vector<TowerElem>& xs)
{
    std::vector<std::string> out;
    for (const auto& x : xs)
        out.push_back(t.format(x));
    return out;
}

Json scan_json(const std::optional<OracleScanRecord>& s)
{
    if (!s)
        return nullptr;
    Json j;
    j["degree"] = s->degree;
    j["coeff_degree"] = s->coeff_degree;
    j["range"] = Json::array({s->from, s->to});
    j["relations_found"] = s->relations_found;
    j["sequences"] = string_list(s->sequences);
    if (!s->param_values.empty())
        j["param_values"] = rational_list(s->param_values);
    return j;
}

std::string relation_text(const Certificate& c)
{
    const Tower& t = c.tower;
    std::string lhs;
    if (c.kind == "products") {
        for (std::size_t i = 0; i < c.f.size(); ++i) {
            if (c.c[i].is_zero())
                continue;
            lhs += (lhs.empty() ? "" : " * ") + std::string("P") + std::to_string(i + 1) + "(n)^(" + t.format(c.c[i]) +
                   ")";
        }
        return lhs + " = g(n+1)/g(" + std::to_string(c.start) + ")";
    }
    for (std::size_t i = 0; i < c.f.size(); ++i) {
        if (c.c[i].is_zero())
            continue;
        lhs += (lhs.empty() ? "" : " + ") + std::string("(") + t.format(c.c[i]) + ")*S" + std::to_string(i + 1) + "(n)";
    }
    return lhs + " = g(n+1) - g(" + std::to_string(c.start) + ")";
}

}  // namespace

Json tower_to_json(const Tower& t)
{
    Json j;
    j["base"] = base_name(t.base());
    j["var"] = t.var();
    j["params"] = t.has_param() ? Json::array({t.param()}) : Json::array();
    Json gens = Json::array();
    for (const auto& g : t.generators()) {
        Json e;
        e["name"] = g.name;
        e["kind"] = g.kind == GenKind::Pi ? "pi" : "sigma";
        if (g.kind == GenKind::Pi)
            e["alpha"] = t.format(g.alpha);
        else
            e["beta"] = t.format(g.beta);
        e["seed"] = Json{{"r", g.seed.r}, {"c", t.format(g.seed.c)}};
        gens.push_back(e);
    }
    j["generators"] = gens;
    return j;
}

Json certificate_to_json(const Certificate& cert)
{
    const Tower& t = cert.tower;
    Json j;
    j["verdict"] = verdict_name(cert.verdict);
    j["class"] = cert.problem_class;
    Json c = Json::array();
    for (const auto& ci : cert.c)
        c.push_back(t.format(ci));
    j["c"] = c;
    j["g"] = cert.verdict == Verdict::Relation ? Json(t.format(cert.g)) : Json(nullptr);
    j["tower"] = tower_to_json(t);
    j["verified_range"] =
        cert.verified_range ? Json::array({cert.verified_range->first, cert.verified_range->second}) : Json(nullptr);
    j["oracle_scan"] = scan_json(cert.scan);
    j["kind"] = cert.kind;
    j["problem"] = Json{{"terms", string_list(formatted(t, cert.f))}, {"start", cert.start}};
    if (cert.order >= 0)
        j["order"] = cert.order;
    if (cert.max_order >= 0)
        j["max_order"] = cert.max_order;
    if (cert.verdict == Verdict::Relation) {
        j["relation"] = relation_text(cert);
        if (!cert.verified_params.empty())
            j["verified_params"] = rational_list(cert.verified_params);
        if (!cert.numeric_checks.empty()) {
            Json nc = Json::array();
            for (const auto& n : cert.numeric_checks)
                nc.push_back(Json{{t.param(), n.param.get_str()}, {"n_max", n.n_max}});
            j["numeric_checks"] = nc;
        }
    } else {
        j["statement"] = cert.statement;
        j["scan_limitation"] = cert.scan_limitation;
    }
    j["completeness"] = cert.completeness;
    return j;
}

Json certificate_to_json(const ZeilbergerCertificate& cert)
{
    Json j = certificate_to_json(cert.recurrence);
    j["independence"] = cert.independence ? certificate_to_json(*cert.independence) : Json(nullptr);
    return j;
}

std::string certificate_to_text(const Certificate& cert)
{
    const Tower& t = cert.tower;
    std::ostringstream os;
    os << "verdict: " << verdict_name(cert.verdict) << " (class " << cert.problem_class << ", " << cert.kind << ")\n";
    auto terms = formatted(t, cert.f);
    for (std::size_t i = 0; i < terms.size(); ++i)
        os << "  f" << i + 1 << " = " << terms[i] << "\n";
    if (cert.verdict == Verdict::Relation) {
        if (cert.order >= 0)
            os << "order: " << cert.order << "\n";
        for (std::size_t i = 0; i < cert.c.size(); ++i)
            os << "  c" << i + 1 << " = " << t.format(cert.c[i]) << "\n";
        os << "g = " << t.format(cert.g) << "\n";
        os << "relation: " << relation_text(cert) << "\n";
        if (cert.verified_range)
            os << "verified for n in [" << cert.verified_range->first << ", " << cert.verified_range->second << "]\n";
    } else {
        os << "statement: " << cert.statement << "\n";
    }
    if (cert.scan)
        os << "oracle scan: degree " << cert.scan->degree << ", coefficient degree " << cert.scan->coeff_degree
           << ", n in [" << cert.scan->from << ", " << cert.scan->to << "], relations found "
           << cert.scan->relations_found << "\n";
    return os.str();
}

std::string certificate_to_text(const ZeilbergerCertificate& cert)
{
    std::string s = certificate_to_text(cert.recurrence);
    if (cert.independence)
        s += "lower orders:\n" + certificate_to_text(*cert.independence);
    return s;
}

}  // namespace telecert
