#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mincw/alpha.hpp"
#include "mincw/io.hpp"
#include "mincw/search.hpp"

using json = nlohmann::ordered_json;
using namespace mincw;

namespace {

std::string format_dual(const Matrix& m) {
    std::ostringstream os;
    os << '(';
    for (int r = 0; r < m.rows; ++r) {
        if (r) os << "; ";
        for (int c = 0; c < m.cols; ++c) os << (c ? " " : "") << int(m.at(r, c));
    }
    os << ')';
    return os.str();
}

json certificate_json(const Matrix& gen) {
    json rows = json::array();
    for (int r = 0; r < gen.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < gen.cols; ++c) row.push_back(int(gen.at(r, c)));
        rows.push_back(std::move(row));
    }
    return json{{"q", gen.field->q()}, {"k", gen.rows}, {"n", gen.cols}, {"rows", rows}};
}

Matrix certificate_from_json(const json& j) {
    const Field& f = Field::get(j.at("q").get<int>());
    int k = j.at("k").get<int>(), n = j.at("n").get<int>();
    Matrix gen(f, k, n);
    const auto& rows = j.at("rows");
    if (int(rows.size()) != k) fail(Errc::invalid_input, "certificate row count mismatch");
    for (int r = 0; r < k; ++r) {
        if (int(rows[r].size()) != n) fail(Errc::invalid_input, "certificate column count mismatch");
        for (int c = 0; c < n; ++c) {
            int v = rows[r][c].get<int>();
            if (v < 0 || v >= f.q()) fail(Errc::invalid_input, "certificate entry out of range");
            gen.at(r, c) = uint8_t(v);
        }
    }
    return gen;
}

struct GlobalOpts {
    int workers = 0;
    uint64_t max_subsets = 100'000'000;
    uint64_t alpha_subspaces = 40;
    int alpha_r = 4;
    uint64_t oracle_codewords = uint64_t(1) << 20;

    search::SearchGuards search_guards() const {
        search::SearchGuards g;
        g.max_subsets = max_subsets;
        return g;
    }
    alpha::AlphaGuards alpha_guards() const {
        alpha::AlphaGuards g;
        g.max_subspaces = alpha_subspaces;
        g.max_r = alpha_r;
        return g;
    }
};

int cmd_analyze(const GlobalOpts& go, const std::string& file, int subcodes_l, bool list,
                const std::string& format) {
    LinearCode input = io::read_generator_matrix_file(file);
    LinearCode code = input;
    int removed = 0;
    if (!input.is_projective()) std::tie(code, removed) = reduce_to_projective(input);

    const int q = code.field().q();
    int d = min_distance(input);
    uint64_t m = count_minimal(code, go.workers);

    json out;
    out["n"] = input.n();
    out["k"] = input.k();
    out["q"] = q;
    out["projective"] = input.is_projective();
    if (removed) {
        out["reduced_n"] = code.n();
        out["removed_columns"] = removed;
    }
    out["min_distance"] = d;
    out["M"] = m;
    out["codeword_classes"] = m * uint64_t(q - 1);

    if (list) {
        json hps = json::array();
        for (const auto& h : code.geometry().hyperplanes()) {
            MinimalityReport rep = is_minimal_hyperplane(code, h);
            json jh;
            jh["dual"] = format_dual(h.dual_basis);
            jh["weight"] = rep.weight;
            jh["minimal"] = rep.minimal;
            if (rep.witness_codim2) jh["witness"] = format_dual(rep.witness_codim2->dual_basis);
            hps.push_back(std::move(jh));
        }
        out["hyperplanes"] = std::move(hps);
    }
    if (subcodes_l > 0) {
        if (subcodes_l > code.k()) fail(Errc::out_of_range, "--subcodes exceeds the dimension");
        json js;
        js["l"] = subcodes_l;
        js["d_l"] = ghw(code, subcodes_l, go.workers);
        js["M_l"] = count_support_minimal(code, subcodes_l, go.workers);
        out["subcodes"] = std::move(js);
    }

    if (format == "json") {
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "n: " << out["n"] << "\nk: " << out["k"] << "\nq: " << out["q"]
              << "\nprojective: " << (input.is_projective() ? "yes" : "no") << '\n';
    if (removed)
        std::cout << "reduced to projective code of length " << code.n() << " (removed "
                  << removed << " columns)\n";
    std::cout << "min-distance: " << d << "\nM(C): " << m
              << "\ncodeword-classes (q-1)M(C): " << m * uint64_t(q - 1) << '\n';
    if (list) {
        std::cout << "hyperplanes:\n";
        int idx = 0;
        for (const auto& jh : out["hyperplanes"]) {
            std::cout << "  [" << idx++ << "] dual=" << jh["dual"].get<std::string>()
                      << " weight=" << jh["weight"]
                      << (jh["minimal"].get<bool>() ? " minimal" : " non-minimal");
            if (jh.contains("witness"))
                std::cout << " witness=" << jh["witness"].get<std::string>();
            std::cout << '\n';
        }
    }
    if (subcodes_l > 0)
        std::cout << "subcodes l=" << subcodes_l << ": d_l=" << out["subcodes"]["d_l"]
                  << " M^l(C)=" << out["subcodes"]["M_l"] << '\n';
    return 0;
}

int cmd_alpha(const GlobalOpts& go, int q, int k, int r, int l, const std::string& method,
              bool witness, const std::string& format) {
    std::optional<uint64_t> value;
    std::string prov;
    std::optional<alpha::CoverWitness> wit;

    if (method == "closed") {
        auto v = alpha::alpha_closed(q, k, r);
        if (!v) {
            std::cerr << "error: OutOfRange: no closed form covers this instance\n";
            return 3;
        }
        value = *v;
        prov = "closed";
    } else if (method == "brute") {
        auto br = alpha::alpha_brute(q, k, r, l, go.alpha_guards(), go.workers);
        value = br.value;
        prov = "brute";
        wit = std::move(br.witness);
    } else if (method == "construct") {
        auto w = alpha::alpha_construction(q, k, r);
        value = w.cardinality;
        prov = "construction";
        wit = std::move(w);
    } else {  // auto
        if (l == 1) {
            auto v = alpha::alpha_closed(q, k, r);
            if (v) {
                value = *v;
                prov = "closed";
            }
        }
        if (!value) {
            auto br = alpha::alpha_brute(q, k, r, l, go.alpha_guards(), go.workers);
            value = br.value;
            prov = "brute";
            wit = std::move(br.witness);
        }
    }

    if (format == "json") {
        json out{{"q", q}, {"k", k}, {"r", r}, {"l", l}, {"value", *value}, {"provenance", prov}};
        if (witness && wit) out["witness"] = alpha::serialize_witness(*wit);
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "alpha(q=" << q << ", k=" << k << ", r=" << r;
    if (l != 1) std::cout << ", l=" << l;
    std::cout << ") = " << *value << "   [" << prov << "]\n";
    if (witness && wit) std::cout << alpha::serialize_witness(*wit);
    return 0;
}

int cmd_bound(const GlobalOpts& go, int q, int k, int n, int l, const std::string& format) {
    json out{{"q", q}, {"k", k}, {"n", n}};
    if (l == 1) {
        uint64_t b = alpha::bound_M(q, k, n, go.alpha_guards());
        auto exact = alpha::exact_m(q, k, n, go.alpha_guards());
        auto window = alpha::exact_m_window(q, k, n, go.alpha_guards());
        out["lower_bound_M"] = b;
        if (exact) {
            out["exact_m"] = *exact;
            out["window_r"] = *window;
        } else {
            out["exact_m"] = nullptr;
        }
        if (format == "json") {
            std::cout << out.dump(2) << '\n';
            return 0;
        }
        std::cout << "M(C) > " << (b == 0 ? 0 : b - 1) << " for every projective code (bound "
                  << b << ")\n";
        if (exact)
            std::cout << "exact m = " << *exact << " (window r=" << *window << ")\n";
        else
            std::cout << "exact m: window not applicable\n";
        return 0;
    }
    uint64_t b = alpha::bound_Ml(q, k, l, n, go.alpha_guards());
    out["l"] = l;
    out["lower_bound_Ml"] = b;
    if (format == "json") {
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "M^" << l << "(C) >= " << b << " for every projective code\n";
    return 0;
}

json table_json(int q, const std::string& mode, const std::vector<search::TableEntry>& entries) {
    json out;
    out["q"] = q;
    out["mode"] = mode;
    json arr = json::array();
    for (const auto& e : entries) {
        json je;
        je["n"] = e.n;
        je["k"] = e.k;
        if (e.guard_exceeded) {
            je["status"] = "guard-exceeded";
        } else {
            je["status"] = "ok";
            je["value"] = e.value;
            je["method"] = search::method_name(e.method);
            je["certificate"] = certificate_json(e.certificate);
        }
        arr.push_back(std::move(je));
    }
    out["entries"] = std::move(arr);
    return out;
}

int cmd_table(const GlobalOpts& go, int q, int nmax, int kmax, const std::string& mode,
              const std::string& format) {
    auto m = mode == "max" ? search::Mode::maximize : search::Mode::minimize;
    auto entries = search::m_table(q, nmax, kmax, m, go.search_guards(), go.workers);

    if (format == "json") {
        std::cout << table_json(q, mode, entries).dump(2) << '\n';
        return 0;
    }
    // grid, rows n, columns k
    std::map<std::pair<int, int>, const search::TableEntry*> by;
    for (const auto& e : entries) by[{e.n, e.k}] = &e;
    const char* sep = format == "tsv" ? "\t" : "  ";
    std::cout << "n/k";
    for (int k = 1; k <= kmax; ++k) std::cout << sep << k;
    std::cout << '\n';
    for (int n = 1; n <= nmax; ++n) {
        std::cout << n;
        for (int k = 1; k <= kmax; ++k) {
            auto it = by.find({n, k});
            std::cout << sep;
            if (it == by.end()) std::cout << '-';
            else if (it->second->guard_exceeded) std::cout << '!';
            else std::cout << it->second->value;
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_search(const GlobalOpts& go, int q, int k, int n, const std::string& mode,
               const std::string& engine, const std::string& checkpoint,
               const std::string& format) {
    auto m = mode == "max" ? search::Mode::maximize : search::Mode::minimize;
    search::Engine eng = search::Engine::automatic;
    if (engine == "subset") eng = search::Engine::subset;
    else if (engine == "canon") eng = search::Engine::canonical;

    search::Checkpoint resume, save;
    const search::Checkpoint* resume_p = nullptr;
    bool want_save = false;
    if (!checkpoint.empty()) {
        std::ifstream in(checkpoint);
        if (in) {
            resume = search::load_checkpoint(in);
            resume_p = &resume;
        } else {
            want_save = true;
        }
    }

    search::TableEntry e = search::m_value(q, k, n, m, eng, go.search_guards(), go.workers,
                                           resume_p, want_save ? &save : nullptr);
    if (want_save) {
        std::ofstream out(checkpoint);
        search::save_checkpoint(out, save);
    }

    if (format == "json") {
        json out{{"q", q},
                 {"k", k},
                 {"n", n},
                 {"mode", mode},
                 {"value", e.value},
                 {"method", search::method_name(e.method)},
                 {"certificate", certificate_json(e.certificate)}};
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << "value: " << e.value << "\nmethod: " << search::method_name(e.method)
              << "\ncertificate:\n";
    io::write_generator_matrix(std::cout, e.certificate);
    return 0;
}

int cmd_verify(const GlobalOpts& go, const std::string& file) {
    std::ifstream probe(file);
    if (!probe) fail(Errc::invalid_input, "cannot open file: " + file);
    std::string head;
    probe >> head;
    probe.close();

    if (!head.empty() && head[0] == '{') {
        std::ifstream in(file);
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            fail(Errc::invalid_input, std::string("bad JSON: ") + e.what());
        }
        bool all_ok = true;
        int checked = 0;
        for (const auto& je : j.at("entries")) {
            if (je.at("status") != "ok") continue;
            Matrix gen = certificate_from_json(je.at("certificate"));
            LinearCode code(*gen.field, std::move(gen));
            uint64_t m = count_minimal(code, go.workers);
            bool ok = code.is_projective() && je.at("n").get<int>() == code.n() &&
                      je.at("k").get<int>() == code.k() &&
                      m == je.at("value").get<uint64_t>();
            std::cout << "entry n=" << je.at("n") << " k=" << je.at("k") << " value="
                      << je.at("value") << (ok ? " OK" : " MISMATCH") << '\n';
            all_ok &= ok;
            ++checked;
        }
        std::cout << (all_ok ? "verified " : "FAILED ") << checked << " entries\n";
        return all_ok ? 0 : 1;
    }

    LinearCode input = io::read_generator_matrix_file(file);
    LinearCode code = input;
    if (!input.is_projective()) code = reduce_to_projective(input).first;
    uint64_t m = count_minimal(code, go.workers);
    uint64_t oracle = 0;
    bool have_oracle = false;
    try {
        oracle = oracle_count_minimal(code, go.oracle_codewords);
        have_oracle = true;
    } catch (const Error& e) {
        if (e.code() != Errc::too_large) throw;
    }
    std::cout << "n=" << input.n() << " k=" << input.k() << " q=" << input.field().q()
              << " M=" << m;
    if (have_oracle) {
        std::cout << " oracle=" << oracle << (oracle == m ? " OK" : " MISMATCH") << '\n';
        return oracle == m ? 0 : 1;
    }
    std::cout << " (codeword oracle skipped: q^k over guard)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal-codeword analysis of linear codes via projective geometry"};
    app.require_subcommand(1);

    GlobalOpts go;
    app.add_option("--workers", go.workers, "worker threads (0 = all cores)");
    app.add_option("--max-subsets", go.max_subsets, "brute-subset engine guard");
    app.add_option("--alpha-subspaces", go.alpha_subspaces, "alpha brute-force subspace guard");
    app.add_option("--alpha-r", go.alpha_r, "alpha brute-force r guard");
    app.add_option("--oracle-codewords", go.oracle_codewords, "codeword-oracle guard on q^k");

    std::string file, format = "text", mode = "min", engine = "auto", method = "auto";
    std::string checkpoint;
    int q = 2, k = 3, n = 0, r = 0, l = 1, subcodes_l = 0;
    bool list = false, witness = false;

    auto* analyze = app.add_subcommand("analyze", "analyze a generator-matrix file");
    analyze->add_option("file", file)->required();
    analyze->add_option("--subcodes", subcodes_l, "also report d_l and M^l for this l");
    analyze->add_flag("--list", list, "list every hyperplane with its minimality");
    analyze->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* alpha_cmd = app.add_subcommand("alpha", "compute alpha_q(k,r)");
    alpha_cmd->add_option("--q", q)->required();
    alpha_cmd->add_option("--k", k)->required();
    alpha_cmd->add_option("--r", r)->required();
    alpha_cmd->add_option("--l", l, "subspace codimension (default 1)");
    alpha_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "closed", "brute", "construct"}));
    alpha_cmd->add_flag("--witness", witness, "print the witness");
    alpha_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* bound = app.add_subcommand("bound", "lower bound / exact window for m_q(n,k)");
    bound->add_option("--q", q)->required();
    bound->add_option("--k", k)->required();
    bound->add_option("--n", n)->required();
    bound->add_option("--l", l, "subcode codimension (default 1 = codewords)");
    bound->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* table = app.add_subcommand("table", "m/M table over a (n,k) grid");
    table->add_option("--q", q)->required();
    table->add_option("--nmax", n)->required();
    table->add_option("--kmax", k)->required();
    table->add_option("--mode", mode)->check(CLI::IsMember({"min", "max"}));
    table->add_option("--format", format)->check(CLI::IsMember({"text", "tsv", "json"}));

    auto* searchc = app.add_subcommand("search", "single m/M value with certificate");
    searchc->add_option("--q", q)->required();
    searchc->add_option("--k", k)->required();
    searchc->add_option("--n", n)->required();
    searchc->add_option("--mode", mode)->check(CLI::IsMember({"min", "max"}));
    searchc->add_option("--engine", engine)->check(CLI::IsMember({"auto", "subset", "canon"}));
    searchc->add_option("--checkpoint", checkpoint, "resume/save augmentation roots");
    searchc->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "re-check a matrix file or table JSON");
    verify->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(go, file, subcodes_l, list, format);
        if (alpha_cmd->parsed()) return cmd_alpha(go, q, k, r, l, method, witness, format);
        if (bound->parsed()) return cmd_bound(go, q, k, n, l, format);
        if (table->parsed()) return cmd_table(go, q, n, k, mode, format);
        if (searchc->parsed()) return cmd_search(go, q, k, n, mode, engine, checkpoint, format);
        if (verify->parsed()) return cmd_verify(go, file);
    } catch (const Error& e) {
        std::cerr << "error: " << e.code_name() << ": " << e.what() << '\n';
        switch (e.code()) {
            case Errc::too_large:
            case Errc::guard_exceeded: return 3;
            case Errc::invalid_input: return 4;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
