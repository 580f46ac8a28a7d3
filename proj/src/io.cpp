#include "levywn/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace levywn {

using nlohmann::json;

LevyMeasureModel measure_from_json(const std::string& text) {
    const json j = json::parse(text);
    const std::string type = j.at("type").get<std::string>();
    if (type == "atoms") {
        std::vector<Atom> atoms;
        for (const json& a : j.at("atoms")) {
            atoms.push_back({a.at("z").get<double>(), a.at("w").get<double>()});
        }
        return LevyMeasureModel::from_atoms(std::move(atoms));
    }
    if (type == "density") {
        const json& support = j.at("support");
        const int nodes = j.value("nodes", 256);
        return LevyMeasureModel::from_density(j.at("expr_id").get<std::string>(),
                                              support.at(0).get<double>(),
                                              support.at(1).get<double>(), nodes);
    }
    throw std::invalid_argument("measure_from_json: unknown type '" + type + "'");
}

LevyMeasureModel measure_from_json_file(const std::string& path) {
    return measure_from_json(read_text_file(path));
}

std::string measure_to_json(const LevyMeasureModel& model) {
    json j;
    if (model.atomic()) {
        j["type"] = "atoms";
        j["atoms"] = json::array();
        for (const Atom& a : model.atoms()) {
            j["atoms"].push_back({{"z", a.z}, {"w", a.w}});
        }
    } else {
        j["type"] = "density";
        j["expr_id"] = model.expr_id();
        j["support"] = {model.support_lo(), model.support_hi()};
        j["nodes"] = model.nodes();
    }
    return j.dump();
}

ChaosExpansion chaos_from_json(const std::string& text) {
    const json j = json::parse(text);
    ChaosExpansion F;
    for (const json& term : j.at("terms")) {
        std::vector<unsigned> entries;
        for (const json& e : term.at("alpha")) entries.push_back(e.get<unsigned>());
        F.add(MultiIndex(std::move(entries)), term.at("c").get<double>());
    }
    return F;
}

std::string chaos_to_json(const ChaosExpansion& F) {
    json terms = json::array();
    for (const auto& [alpha, c] : F.terms()) {
        terms.push_back({{"alpha", alpha.entries()}, {"c", c}});
    }
    return json{{"terms", terms}}.dump();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string chaos_to_csv(const ChaosExpansion& F, int weight_k) {
    std::ostringstream out;
    out << "alpha,coefficient,order,index,weight_k\n";
    for (const auto& [alpha, c] : F.terms()) {
        out << '"' << alpha.to_string() << '"' << ',' << format_double(c) << ',' << alpha.order()
            << ',' << alpha.index() << ',' << format_double(alpha.weight(weight_k)) << '\n';
    }
    return out.str();
}

std::string jump_basis_to_csv(const OrthonormalJumpBasis& basis, const LevyMeasureModel& model) {
    const std::vector<double> gram = jump_basis_gram(basis, model);
    std::ostringstream out;
    out << "m,degree";
    for (std::size_t p = 0; p <= basis.M; ++p) out << ",c" << p;
    out << ",gram_residual\n";
    for (std::size_t m = 1; m <= basis.M; ++m) {
        double residual = 0.0;
        for (std::size_t j = 1; j <= basis.M; ++j) {
            const double target = (m == j) ? 1.0 : 0.0;
            residual = std::max(residual,
                                std::abs(gram[(m - 1) * basis.M + (j - 1)] - target));
        }
        out << m << ',' << m;
        for (std::size_t p = 0; p <= basis.M; ++p) {
            out << ',' << format_double(p < basis.coeffs[m - 1].size() ? basis.coeffs[m - 1][p] : 0.0);
        }
        out << ',' << format_double(residual) << '\n';
    }
    return out.str();
}

std::string mc_report_to_csv(const std::vector<McReportRow>& rows) {
    std::ostringstream out;
    out << "quantity,estimate,theory,std_error,n_samples,seed,eps,truncation_var\n";
    for (const McReportRow& r : rows) {
        out << r.quantity << ',' << format_double(r.estimate) << ',' << format_double(r.theory)
            << ',' << format_double(r.std_error) << ',' << r.n_samples << ',' << r.seed << ','
            << format_double(r.eps) << ',' << format_double(r.truncation_var) << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace levywn
