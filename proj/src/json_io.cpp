#include "srnoise/json_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace srnoise {

using nlohmann::json;

LaserParams params_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError("ParseError", e.what());
    }
    if (!doc.is_object()) throw InputError("ParseError", "parameter document must be a JSON object");

    static const std::set<std::string> known{"omega_rabi", "kappa",      "gamma_perp",
                                             "gamma_par",  "pump",       "n_emitters",
                                             "coupling_f", "units"};
    for (const auto& [key, _] : doc.items())
        if (!known.contains(key)) throw InputError("UnknownKey", "unknown parameter key '" + key + "'");

    const auto need_number = [&doc](const char* key) {
        if (!doc.contains(key)) throw InputError("MissingKey", std::string("missing key '") + key + "'");
        if (!doc[key].is_number())
            throw InputError("ParseError", std::string("key '") + key + "' must be a number");
        return doc[key].get<double>();
    };

    LaserParams p;
    p.omega_rabi = need_number("omega_rabi");
    p.kappa = need_number("kappa");
    p.gamma_perp = need_number("gamma_perp");
    p.gamma_par = need_number("gamma_par");
    p.pump = need_number("pump");
    p.coupling_f = need_number("coupling_f");
    if (!doc.contains("n_emitters") || !doc["n_emitters"].is_number_integer())
        throw InputError("ParseError", "key 'n_emitters' must be an integer");
    p.n_emitters = doc["n_emitters"].get<long long>();
    if (doc.contains("units")) {
        const std::string units = doc["units"].get<std::string>();
        if (units == "gamma_par")
            p.units = RateUnits::GammaPar;
        else if (units == "rad_per_s")
            p.units = RateUnits::RadPerSec;
        else
            throw InputError("ParseError", "units must be 'gamma_par' or 'rad_per_s', got '" +
                                               units + "'");
    }
    return p;
}

LaserParams params_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("FileError", "cannot open parameter file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return params_from_json_text(text);
}

std::string steady_state_to_json(const SteadyState& s) {
    json doc;
    doc["n"] = s.n;
    doc["n_e"] = s.n_e;
    doc["n_g"] = s.n_g;
    doc["inversion"] = s.inversion;
    doc["sigma"] = s.sigma;
    doc["dipole_d"] = s.dipole_d;
    doc["residual_max"] = s.residual_max;
    return doc.dump(2);
}

std::string decomposition_to_json(const PopulationVarianceDecomposition& d) {
    json doc;
    doc["total"] = d.total;
    doc["pump_decay"] = d.pump_decay_part;
    doc["field_polarization"] = d.field_polarization_part;
    return doc.dump(2);
}

std::string checks_to_json(const std::vector<checks::CheckResult>& results) {
    json arr = json::array();
    for (const auto& r : results) {
        json item;
        item["check_name"] = r.name;
        item["max_rel_err"] = r.max_rel_err;
        item["pass"] = r.pass;
        item["detail"] = r.detail;
        arr.push_back(item);
    }
    return arr.dump(2);
}

}  // namespace srnoise
