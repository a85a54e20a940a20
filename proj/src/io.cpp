#include "rdil/io.hpp"

#include <fstream>

namespace rdil {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("complex scalar must be a [re, im] pair");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        if (static_cast<Index>(j[static_cast<size_t>(r)].size()) != cols)
            throw InputError("matrix rows have unequal lengths");
        for (Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(j[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    }
    return m;
}

json system_to_json(const ProductSystem& sys) {
    json j;
    j["k"] = sys.k();
    j["dims"] = sys.dims();
    json twists = json::object();
    for (const auto& [key, t] : sys.stored_twists())
        twists[std::to_string(key.first) + "," + std::to_string(key.second)] = matrix_to_json(t);
    j["twists"] = std::move(twists);
    return j;
}

ProductSystem system_from_json(const json& j) {
    try {
        if (!j.contains("k") || !j.contains("dims")) throw InputError("system needs k and dims");
        const int k = j["k"].get<int>();
        const std::vector<int> dims = j["dims"].get<std::vector<int>>();
        if (static_cast<int>(dims.size()) != k) throw InputError("dims length must equal k");
        std::map<std::pair<int, int>, Matrix> twists;
        if (j.contains("twists")) {
            for (const auto& [key, value] : j["twists"].items()) {
                const auto comma = key.find(',');
                if (comma == std::string::npos) throw InputError("twist keys look like \"i,j\"");
                const int i = std::stoi(key.substr(0, comma));
                const int jj = std::stoi(key.substr(comma + 1));
                twists[{i, jj}] = matrix_from_json(value);
            }
        }
        return ProductSystem(dims, std::move(twists));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed product system: ") + e.what());
    }
}

json representation_to_json(const Representation& rep) {
    json j;
    j["h"] = rep.hdim();
    json blocks = json::array();
    for (int i = 1; i <= rep.k(); ++i) {
        json list = json::array();
        for (int l = 1; l <= rep.system().dim(i); ++l) list.push_back(matrix_to_json(rep.block(i, l)));
        blocks.push_back(std::move(list));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

Representation representation_from_json(const json& j, ProductSystem sys) {
    try {
        if (!j.contains("h") || !j.contains("blocks"))
            throw InputError("representation needs h and blocks");
        const Index h = j["h"].get<Index>();
        const auto& jblocks = j["blocks"];
        if (static_cast<int>(jblocks.size()) != sys.k())
            throw InputError("expected one block list per generator");
        std::vector<std::vector<Matrix>> blocks;
        for (const auto& jlist : jblocks) {
            std::vector<Matrix> list;
            for (const auto& jm : jlist) list.push_back(matrix_from_json(jm));
            blocks.push_back(std::move(list));
        }
        return Representation(std::move(sys), h, std::move(blocks));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed representation: ") + e.what());
    }
}

json polynomial_to_json(const NcPolynomial& p) {
    json terms = json::array();
    for (const auto& t : p.terms) {
        json word = json::array();
        for (const auto& [i, l] : t.word) word.push_back(json::array({i, l}));
        terms.push_back(json{{"coef", complex_to_json(t.coef)}, {"word", std::move(word)}});
    }
    return json{{"terms", std::move(terms)}};
}

NcPolynomial polynomial_from_json(const json& j) {
    try {
        NcPolynomial p;
        for (const auto& jt : j.at("terms")) {
            NcPolynomial::Term term;
            term.coef = complex_from_json(jt.at("coef"));
            for (const auto& jl : jt.at("word"))
                term.word.push_back({jl.at(0).get<int>(), jl.at(1).get<int>()});
            p.terms.push_back(std::move(term));
        }
        return p;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed polynomial: ") + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("cannot parse " + path + ": " + e.what());
    }
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << '\n';
}

ProductSystem load_system(const std::string& path) { return system_from_json(load_json_file(path)); }

void save_system(const ProductSystem& sys, const std::string& path) {
    write_json_file(system_to_json(sys), path);
}

Representation load_representation(const std::string& path, ProductSystem sys) {
    return representation_from_json(load_json_file(path), std::move(sys));
}

void save_representation(const Representation& rep, const std::string& path) {
    write_json_file(representation_to_json(rep), path);
}

NcPolynomial load_polynomial(const std::string& path) {
    return polynomial_from_json(load_json_file(path));
}

json validation_to_json(const ValidationReport& r) {
    json pairs = json::array();
    for (const auto& p : r.commutation)
        pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"residual", p.residual}});
    return json{{"valid", r.valid},
                {"sigma_max", r.sigma_max},
                {"margins", r.margins},
                {"commutation_residuals", std::move(pairs)},
                {"tol_contraction", r.tol_contraction},
                {"tol_residual", r.tol_residual}};
}

json dc_report_to_json(const DoublyCommutingReport& r) {
    json pairs = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"residual", p.residual}});
    return json{{"doubly_commuting", r.doubly_commuting},
                {"max_residual", r.max_residual},
                {"pairs", std::move(pairs)},
                {"tol", r.tol}};
}

json brehmer_to_json(const BrehmerCertificate& c) {
    json subsets = json::array();
    for (const auto& s : c.subsets)
        subsets.push_back(json{{"v", s.v}, {"min_eigenvalue", s.min_eigenvalue}, {"dim", s.dim}});
    return json{{"condition_d", c.condition_d},
                {"worst", c.worst},
                {"subsets", std::move(subsets)},
                {"tol", c.tol}};
}

json comp_residuals_to_json(const CompIdentityResiduals& r) {
    return json{{"r_sds", r.r_sds}, {"sl_i", r.sl_i}, {"d_lrl", r.d_lrl}};
}

json vn_report_to_json(const VnReport& r, const NcPolynomial& p) {
    return json{{"poly", polynomial_to_json(p)},
                {"norm_T", r.norm_t},
                {"norm_S_by_N", r.norm_s_by_n},
                {"margin", r.margin},
                {"monotone", r.monotone}};
}

json dilation_report_to_json(const TruncatedDilation& dil, const DilationVerification& ver,
                             const BrehmerCertificate& cert, const CompIdentityResiduals& comp,
                             const std::vector<Index>& rank_profile) {
    json grades = json::array();
    for (const auto& g : dil.layout().grades()) grades.push_back(g.entries());
    return json{{"box", dil.box().entries()},
                {"kdim", dil.kdim()},
                {"grades", std::move(grades)},
                {"rank_profile", rank_profile},
                {"brehmer", brehmer_to_json(cert)},
                {"comp_identities", comp_residuals_to_json(comp)},
                {"embed_isometry_residual", ver.embed_isometry},
                {"shift_isometry_residuals", ver.shift_isometry},
                {"adjoint_intertwining_residuals", ver.adjoint_intertwining},
                {"symbol_residual", ver.symbol_max},
                {"isom_residual", ver.isom_max},
                {"isom_complete", ver.isom_complete},
                {"ambiguous_null_eigenvalues", dil.ambiguous_count()}};
}

}  // namespace rdil
