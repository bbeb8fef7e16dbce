#include "thetachar/output.hpp"

#include <json.hpp>
#include <sstream>

#include "thetachar/errors.hpp"

namespace thetachar {

namespace {

using nlohmann::json;

json rat_json(const Rat& r) {
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
        fail(Errc::InvalidInput, "rational exceeds the 64-bit serialization range");
    return json{{"num", r.get_num().get_si()}, {"den", r.get_den().get_si()}};
}

Rat rat_from(const json& j) { return rat(j.at("num").get<long>(), j.at("den").get<long>()); }

json wvec_json(const WVec& v) {
    json out = json::array();
    for (const auto& c : v) out.push_back(rat_json(c));
    return out;
}

WVec wvec_from(const json& j) {
    WVec out;
    out.reserve(j.size());
    for (const auto& c : j) out.push_back(rat_from(c));
    return out;
}

std::string str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

} // namespace

OutputRecord make_record(const std::string& algebra, const BoundaryWeight& d, long u,
                         const Rat& order, const GradedSeries& s) {
    OutputRecord rec;
    rec.algebra = algebra;
    rec.u = u;
    rec.y_index = d.y_index;
    rec.beta = d.beta;
    rec.order = order;
    rec.t_exp = s.t_exp();
    rec.unit_pow = s.unit_pow();
    rec.terms.reserve(s.term_count());
    for (const auto& [m, c] : s.terms()) rec.terms.push_back({s.q_exp(m), s.w_exp(m), c});
    return rec;
}

std::string record_to_json(const OutputRecord& rec) {
    json meta{{"algebra", rec.algebra},
              {"u", rec.u},
              {"descriptor", json{{"yIndex", rec.y_index}, {"betaCoords", wvec_json(rec.beta)}}},
              {"order", rat_json(rec.order)}};
    json terms = json::array();
    for (const auto& t : rec.terms) {
        if (!t.q_exp.get_num().fits_slong_p() || !t.coeff.get_num().fits_slong_p() ||
            !t.q_exp.get_den().fits_slong_p() || !t.coeff.get_den().fits_slong_p())
            fail(Errc::InvalidInput, "term exceeds the 64-bit serialization range");
        terms.push_back(json{{"qNum", t.q_exp.get_num().get_si()},
                             {"qDen", t.q_exp.get_den().get_si()},
                             {"weightCoords", wvec_json(t.weight)},
                             {"coeffNum", t.coeff.get_num().get_si()},
                             {"coeffDen", t.coeff.get_den().get_si()}});
    }
    const json out{{"meta", meta},
                   {"terms", terms},
                   {"tExp", rat_json(rec.t_exp)},
                   {"unitPower", rec.unit_pow}};
    return out.dump(2) + "\n";
}

OutputRecord record_from_json(const std::string& text) {
    const json j = json::parse(text);
    OutputRecord rec;
    const json& meta = j.at("meta");
    rec.algebra = meta.at("algebra").get<std::string>();
    rec.u = meta.at("u").get<long>();
    rec.y_index = meta.at("descriptor").at("yIndex").get<long>();
    rec.beta = wvec_from(meta.at("descriptor").at("betaCoords"));
    rec.order = rat_from(meta.at("order"));
    rec.t_exp = rat_from(j.at("tExp"));
    rec.unit_pow = j.at("unitPower").get<int>();
    for (const auto& t : j.at("terms"))
        rec.terms.push_back({rat(t.at("qNum").get<long>(), t.at("qDen").get<long>()),
                             wvec_from(t.at("weightCoords")),
                             rat(t.at("coeffNum").get<long>(), t.at("coeffDen").get<long>())});
    return rec;
}

std::string record_to_text(const OutputRecord& rec) {
    std::ostringstream os;
    os << "algebra " << rec.algebra << "  u " << rec.u << "  y " << rec.y_index << "  beta (";
    for (std::size_t i = 0; i < rec.beta.size(); ++i)
        os << (i ? "," : "") << str(rec.beta[i]);
    os << ")\norder " << str(rec.order) << "  tExp " << str(rec.t_exp) << "  unitPower "
       << rec.unit_pow << "\n";
    for (const auto& t : rec.terms) {
        os << "q^" << str(t.q_exp) << "  x^(";
        for (std::size_t i = 0; i < t.weight.size(); ++i)
            os << (i ? "," : "") << str(t.weight[i]);
        os << ")  " << str(t.coeff) << "\n";
    }
    return os.str();
}

GradedSeries record_series(const OutputRecord& rec, int rank) {
    GradedSeries out(rank);
    out.set_t_exp(rec.t_exp);
    for (const auto& t : rec.terms) out.add_term(t.q_exp, t.weight, t.coeff);
    out.set_unit_pow(rec.unit_pow);
    return out;
}

} // namespace thetachar
