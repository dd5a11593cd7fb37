// Command line front end: builds the complexes attached to the g1 / g2 / g8
// splitting families (or loads a raw bicomplex), and emits cohomology tables,
// decompositions, formality reports and Massey products.

#include "solvcohom/pipeline.hpp"
#include "solvcohom/salamon.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitParse = 2;
constexpr int kExitInvalidCase = 3;
constexpr int kExitDecomposition = 4;

using namespace solvcohom;

struct Options {
    std::string family, case_token;
    std::string A_text;
    std::optional<int> n, nprime;
    std::string q_text, r_text, x3_text;
    std::string bicomplex_path;
    std::string emit = "dims";
    std::string format = "text";
    std::string out_dir;
    std::string massey_triple;
    bool regenerate = false;
    int scan_budget = -1;
};

SplittingData data_from_options(const Options& o) {
    if (o.family == "g1") {
        if (!o.case_token.empty()) return preset_g1(o.case_token);
        if (!o.r_text.empty()) {
            std::optional<Rational> r;
            if (o.r_text != "generic") r = parse_rational(o.r_text);
            CaseFlags f = classify_g1(r);
            std::string id = f.beta1_trivial ? "i" : (f.beta1gamma1_trivial ? "ii" : "iii");
            return preset_g1(f, id);
        }
        throw InvalidCase("g1 needs --case or --r");
    }
    if (o.family == "g2a0" || o.family == "g2_alpha0") {
        if (!o.x3_text.empty()) return preset_g2_alpha0(o.x3_text);
        if (o.case_token.size() == 3 && o.case_token.compare(0, 2, "pi") == 0)
            return preset_g2_alpha0("pi/" + o.case_token.substr(2));
        if (!o.case_token.empty()) throw InvalidCase("unknown g2a0 case: " + o.case_token);
        throw InvalidCase("g2a0 needs --x3 (pi/2, pi/3, pi/4 or pi/6)");
    }
    if (o.family == "g2" || o.family == "g2_alpha_pos") {
        if (!o.case_token.empty()) return preset_g2_alpha_pos(o.case_token);
        if (!o.q_text.empty()) {
            std::optional<Rational> q;
            if (o.q_text != "generic") q = parse_rational(o.q_text);
            CaseFlags f = classify_g2(q);
            std::string id = f.beta1_trivial ? "qodd" : (f.beta1gamma1_trivial ? "qeven" : "generic");
            return preset_g2_alpha_pos(f, id);
        }
        throw InvalidCase("g2 needs --case or --q");
    }
    if (o.family == "g8") {
        if (!o.case_token.empty()) return preset_g8(o.case_token);
        if (!o.A_text.empty() && o.n && o.nprime) {
            CaseFlags f = classify_g8(parse_gaussian(o.A_text), *o.n, *o.nprime);
            return preset_g8(f, g8_case_name(f));
        }
        throw InvalidCase("g8 needs --case or all of --A, --n, --nprime");
    }
    throw InvalidCase("unknown family: " + o.family + " (use g1, g2a0, g2 or g8)");
}

class Sink {
  public:
    Sink(std::string out_dir, std::string stem) : dir_(std::move(out_dir)), stem_(std::move(stem)) {}

    void put(const std::string& artifact, const std::string& ext, const std::string& payload) {
        if (dir_.empty()) {
            std::cout << payload;
            if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
            return;
        }
        std::filesystem::create_directories(dir_);
        auto path = std::filesystem::path(dir_) / (stem_ + "_" + artifact + "." + ext);
        std::ofstream os(path);
        os << payload;
        std::cout << path.string() << "\n";
    }

  private:
    std::string dir_, stem_;
};

int run(const Options& o) {
    if (o.regenerate) {
        std::string dir = o.out_dir.empty() ? "golden" : o.out_dir;
        for (const auto& f : regenerate_golden(dir, o.scan_budget)) std::cout << f << "\n";
        return 0;
    }

    std::vector<std::string> artifacts;
    {
        std::stringstream ss(o.emit);
        std::string item;
        while (std::getline(ss, item, ',')) {
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front())))
                item.erase(item.begin());
            while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back())))
                item.pop_back();
            if (!item.empty()) artifacts.push_back(item);
        }
    }
    if (artifacts.empty()) throw InvalidCase("--emit needs at least one artifact");
    if (o.format != "text" && o.format != "json" && o.format != "latex")
        throw InvalidCase("--format must be text, json or latex");

    std::optional<SplittingData> data;
    Bicomplex complex;
    std::string stem;
    if (!o.bicomplex_path.empty()) {
        std::ifstream is(o.bicomplex_path);
        if (!is) throw JsonFormatError("cannot open " + o.bicomplex_path);
        json j;
        try {
            is >> j;
        } catch (const json::exception& e) {
            throw JsonFormatError(std::string("bad JSON: ") + e.what());
        }
        complex = bicomplex_from_json(j);
        auto violations = validate(complex);
        if (!violations.empty()) {
            std::string msg = "bicomplex is not valid:";
            for (const auto& v : violations) msg += "\n  " + violation_text(v);
            throw JsonFormatError(msg);
        }
        stem = std::filesystem::path(o.bicomplex_path).stem().string();
    } else {
        data = data_from_options(o);
        complex = build_C(*data).cx;
        stem = data->family + "_" + data->case_id;
    }

    Sink sink(o.out_dir, stem);
    for (const auto& artifact : artifacts) {
        if (artifact == "dims") {
            DimsTable t = DimsTable::of(complex);
            if (o.format == "json")
                sink.put("dims", "json", dims_to_json(t).dump(2) + "\n");
            else if (o.format == "latex")
                sink.put("dims", "tex", dims_to_latex(t));
            else
                sink.put("dims", "txt", dims_to_text(t));
        } else if (artifact == "generators") {
            if (!data) throw InvalidCase("generators need a preset family, not a raw bicomplex");
            if (o.format == "json")
                sink.put("generators", "json", generators_to_json(*data).dump(2) + "\n");
            else
                sink.put("generators", "txt", generators_to_text(*data));
        } else if (artifact == "decomposition") {
            Decomposition dec = decompose(complex);
            if (o.format == "json")
                sink.put("decomposition", "json", decomposition_to_json(dec).dump(2) + "\n");
            else
                sink.put("decomposition", "txt",
                         describe(dec) + "\n" + render_ascii(dec, complex.bounding_box()) + "\n" +
                             render_dot(dec));
        } else if (artifact == "formality") {
            if (!data) {
                // raw bicomplexes: only the diagram-level checks are defined
                Decomposition dec = decompose(complex);
                Page1Report p1 = page1_check(dec);
                bool dd = ddbar_lemma(complex).holds;
                if (o.format == "json") {
                    json j = {{"ddbar_lemma", dd},
                              {"no_squares_criterion", !p1.has_squares},
                              {"note", "raw bicomplex: weak formality reported as the no-squares "
                                       "criterion only; product-level notions need a preset family"}};
                    sink.put("formality", "json", j.dump(2) + "\n");
                } else {
                    std::ostringstream os;
                    os << "ddbar-lemma: " << (dd ? "yes" : "no") << "\n"
                       << "no-squares criterion: " << (!p1.has_squares ? "yes" : "no") << "\n"
                       << "note: raw bicomplex; product-level formality needs a preset family\n";
                    sink.put("formality", "txt", os.str());
                }
                continue;
            }
            FormalityReport r = formality_report(*data, o.scan_budget);
            if (o.format == "json")
                sink.put("formality", "json", formality_to_json(r).dump(2) + "\n");
            else
                sink.put("formality", "txt", formality_to_text(r));
        } else if (artifact == "massey") {
            if (!data) throw InvalidCase("massey needs a preset family, not a raw bicomplex");
            ClosureAlgebra alg = build_closure(*data);
            std::vector<std::array<std::string, 3>> triples;
            if (!o.massey_triple.empty()) {
                std::array<std::string, 3> t;
                std::stringstream ss(o.massey_triple);
                std::string part;
                int i = 0;
                while (std::getline(ss, part, ';') && i < 3) t[i++] = part;
                if (i != 3) throw InvalidCase("--massey needs \"a12;a23;a34\"");
                triples.push_back(t);
            } else {
                triples = documented_triples(data->family, data->case_id);
                if (triples.empty())
                    throw InvalidCase("no documented triple for this case; pass --massey");
            }
            json all = json::array();
            std::ostringstream text;
            for (const auto& t : triples) {
                MasseyResult r = massey_abc(alg, monomial_class(alg, t[0]),
                                            monomial_class(alg, t[1]), monomial_class(alg, t[2]));
                if (o.format == "json") {
                    json j = massey_to_json(alg, r);
                    j["triple"] = {t[0], t[1], t[2]};
                    all.push_back(j);
                } else {
                    text << "<[" << t[0] << "], [" << t[1] << "], [" << t[2] << "]>\n"
                         << massey_to_text(alg, r) << "\n";
                }
            }
            if (o.format == "json")
                sink.put("massey", "json", all.dump(2) + "\n");
            else
                sink.put("massey", "txt", text.str());
        } else {
            throw InvalidCase("unknown artifact: " + artifact);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohomology, decompositions and formality of splitting-type solvmanifolds"};
    Options o;
    app.set_config("--config", "", "manifold description file (key = value)");
    app.add_option("--family", o.family, "g1, g2a0, g2 or g8");
    app.add_option("--case", o.case_token, "case token (g1/g8: i..vii; g2: qodd|qeven|generic)");
    app.add_option("--A", o.A_text, "g8 parameter A, e.g. \"-i\" or \"1+1/2*i\"");
    app.add_option("--n", o.n, "g8 lattice parameter n");
    app.add_option("--nprime", o.nprime, "g8 lattice parameter n'");
    app.add_option("--q", o.q_text, "g2 lattice parameter (rational or \"generic\")");
    app.add_option("--r", o.r_text, "g1 lattice parameter (rational or \"generic\")");
    app.add_option("--x3", o.x3_text, "g2a0 lattice parameter: pi/2, pi/3, pi/4 or pi/6");
    app.add_option("--bicomplex", o.bicomplex_path, "raw bicomplex JSON file");
    app.add_option("--emit", o.emit, "comma list: dims,generators,decomposition,formality,massey");
    app.add_option("--format", o.format, "text, json or latex");
    app.add_option("--out-dir", o.out_dir, "write artifacts to files instead of stdout");
    app.add_option("--massey", o.massey_triple, "triple \"a12;a23;a34\" in monomial notation");
    app.add_flag("--regenerate-golden", o.regenerate, "write the full corpus for all preset cases");
    app.add_option("--scan-budget", o.scan_budget,
                   "Massey scan budget (default: SOLVCOHOM_SCAN_BUDGET or 20000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        return run(o);
    } catch (const SalamonParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const JsonFormatError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DecompositionFailure& e) {
        std::cerr << "decomposition failure: " << e.what() << "\n";
        return kExitDecomposition;
    } catch (const InvalidCase& e) {
        std::cerr << "invalid case: " << e.what() << "\n";
        return kExitInvalidCase;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
