// Instance configuration <-> JSON. The on-disk schema is the wire format
// consumed by the CLI; serialization is deterministic so that
// save(load(save(x))) is byte-identical to save(x).

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcartan/instance.hpp"

namespace qcartan {

namespace io_detail {

inline nlohmann::json word_to_json(const InstanceConfig& cfg, const Word& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (GenId g : w.g) arr.push_back(cfg.generators.at(g));
    return arr;
}

inline Word word_from_json(const std::map<std::string, GenId>& ids, const nlohmann::json& arr,
                           const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + ": word must be an array of symbols");
    Word w;
    for (const auto& s : arr) {
        auto it = ids.find(s.get<std::string>());
        if (it == ids.end())
            throw ConfigError(where + ": unknown generator '" + s.get<std::string>() + "'");
        w.g.push_back(it->second);
    }
    return w;
}

inline nlohmann::json terms_to_json(const InstanceConfig& cfg, const std::vector<RawTerm>& ts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : ts)
        arr.push_back({{"coeff", t.coeff.to_string()}, {"word", word_to_json(cfg, t.word)}});
    return arr;
}

inline std::vector<RawTerm> terms_from_json(const std::map<std::string, GenId>& ids,
                                            const nlohmann::json& arr, const std::string& where) {
    if (!arr.is_array()) throw ConfigError(where + ": term list expected");
    std::vector<RawTerm> out;
    for (const auto& t : arr) {
        RawTerm rt;
        rt.coeff = QScalar::parse(t.at("coeff").get<std::string>());
        rt.word = word_from_json(ids, t.at("word"), where);
        out.push_back(std::move(rt));
    }
    return out;
}

}  // namespace io_detail

inline nlohmann::json instance_to_json(const InstanceConfig& cfg) {
    using nlohmann::json;
    using namespace io_detail;
    json doc;
    doc["generators"] = cfg.generators;

    json rules = json::array();
    for (const auto& [lhs, rhs] : cfg.rules)
        rules.push_back({{"lhs", word_to_json(cfg, lhs)}, {"rhs", terms_to_json(cfg, rhs)}});
    doc["rules"] = rules;

    json cop = json::object(), cou = json::object(), ant = json::object(), antinv = json::object();
    for (std::size_t i = 0; i < cfg.generators.size(); ++i) {
        const std::string& n = cfg.generators[i];
        json terms = json::array();
        for (const auto& t : cfg.coproduct[i])
            terms.push_back({{"coeff", t.coeff.to_string()},
                             {"left", word_to_json(cfg, t.left)},
                             {"right", word_to_json(cfg, t.right)}});
        cop[n] = terms;
        cou[n] = cfg.counit[i].to_string();
        ant[n] = terms_to_json(cfg, cfg.antipode[i]);
        antinv[n] = terms_to_json(cfg, cfg.antipode_inv[i]);
    }
    doc["coproduct"] = cop;
    doc["counit"] = cou;
    doc["antipode"] = ant;
    doc["antipode_inv"] = antinv;

    if (cfg.frt) {
        const FrtBlock& f = *cfg.frt;
        json R = json::array();
        for (int i = 0; i < f.R.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < f.R.cols(); ++j) row.push_back(f.R.at(i, j).to_string());
            R.push_back(row);
        }
        json T = json::array();
        for (const auto& row : f.t_ids) {
            json trow = json::array();
            for (GenId g : row) trow.push_back(cfg.generators.at(g));
            T.push_back(trow);
        }
        json frt;
        frt["R"] = R;
        frt["T"] = T;
        frt["det"] = {{"name", cfg.generators.at(f.det_id)},
                      {"expr", terms_to_json(cfg, f.det_expr)}};
        frt["det_inv"] = cfg.generators.at(f.det_inv_id);
        doc["frt"] = frt;
    }
    return doc;
}

inline InstanceConfig instance_from_json(const nlohmann::json& doc) {
    using namespace io_detail;
    InstanceConfig cfg;
    try {
        cfg.generators = doc.at("generators").get<std::vector<std::string>>();
        std::map<std::string, GenId> ids;
        for (std::size_t i = 0; i < cfg.generators.size(); ++i)
            ids[cfg.generators[i]] = static_cast<GenId>(i);

        for (const auto& r : doc.at("rules")) {
            Word lhs = word_from_json(ids, r.at("lhs"), "rules");
            cfg.rules.push_back({lhs, terms_from_json(ids, r.at("rhs"), "rules")});
        }

        cfg.coproduct.resize(cfg.generators.size());
        cfg.counit.resize(cfg.generators.size());
        cfg.antipode.resize(cfg.generators.size());
        cfg.antipode_inv.resize(cfg.generators.size());
        for (std::size_t i = 0; i < cfg.generators.size(); ++i) {
            const std::string& n = cfg.generators[i];
            for (const auto& t : doc.at("coproduct").at(n)) {
                CoproductTerm ct;
                ct.coeff = QScalar::parse(t.at("coeff").get<std::string>());
                ct.left = word_from_json(ids, t.at("left"), "coproduct");
                ct.right = word_from_json(ids, t.at("right"), "coproduct");
                cfg.coproduct[i].push_back(std::move(ct));
            }
            cfg.counit[i] = QScalar::parse(doc.at("counit").at(n).get<std::string>());
            cfg.antipode[i] = terms_from_json(ids, doc.at("antipode").at(n), "antipode");
            cfg.antipode_inv[i] = terms_from_json(ids, doc.at("antipode_inv").at(n), "antipode_inv");
        }

        if (doc.contains("frt")) {
            const auto& fj = doc.at("frt");
            FrtBlock f;
            const auto& R = fj.at("R");
            int n2 = static_cast<int>(R.size());
            int m = 0;
            while (m * m < n2) ++m;
            if (m * m != n2) throw ConfigError("frt: R is not m^2 x m^2");
            f.m = m;
            f.R = Matrix(n2, n2);
            for (int i = 0; i < n2; ++i) {
                if (static_cast<int>(R.at(i).size()) != n2) throw ConfigError("frt: R is not square");
                for (int j = 0; j < n2; ++j)
                    f.R.at(i, j) = QScalar::parse(R.at(i).at(j).get<std::string>());
            }
            const auto& T = fj.at("T");
            for (const auto& row : T) {
                std::vector<GenId> r;
                for (const auto& s : row) {
                    auto it = ids.find(s.get<std::string>());
                    if (it == ids.end()) throw ConfigError("frt: unknown T generator");
                    r.push_back(it->second);
                }
                f.t_ids.push_back(std::move(r));
            }
            auto dn = ids.find(fj.at("det").at("name").get<std::string>());
            auto di = ids.find(fj.at("det_inv").get<std::string>());
            if (dn == ids.end() || di == ids.end())
                throw ConfigError("frt: determinant generators missing");
            f.det_id = dn->second;
            f.det_inv_id = di->second;
            f.det_expr = terms_from_json(ids, fj.at("det").at("expr"), "frt.det");
            cfg.frt = std::move(f);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed instance document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("malformed scalar in instance document: ") + e.what());
    }
    return cfg;
}

inline std::string instance_to_string(const InstanceConfig& cfg) {
    return instance_to_json(cfg).dump(2) + "\n";
}

inline InstanceConfig load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open instance file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    return instance_from_json(doc);
}

inline void save_instance_file(const InstanceConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write instance file '" + path + "'");
    out << instance_to_string(cfg);
}

}  // namespace qcartan
