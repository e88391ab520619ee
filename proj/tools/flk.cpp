// Command-line front end: build and dump algebras, compute Betti numbers and
// module data, and run the verification suite.

#include <iostream>

#include <CLI11.hpp>

#include "flk/verify.hpp"

using namespace flk;

namespace {

RootDatum datum_of(const std::string& type) {
    if (type.size() != 2) throw BadParameters("type must look like A1, A2, B2");
    return build_root_datum(type[0], type[1] - '0');
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    return file;
}

// Minimal generators of the augmentation ideal realized by basis elements:
// greedy complement of J^2 in J.
std::vector<size_t> minimal_generator_indices(const BasedAlgebra& A) {
    Subspace jsq;
    for (size_t i = 0; i < A.dim(); ++i) {
        if (!A.augmentation[i].is_zero()) continue;
        for (size_t j = 0; j < A.dim(); ++j) {
            if (!A.augmentation[j].is_zero()) continue;
            jsq.add(A.mul(i, j));
        }
    }
    std::vector<size_t> gens;
    for (size_t i = 0; i < A.dim(); ++i) {
        if (!A.augmentation[i].is_zero()) continue;
        SparseVec v{{i, A.field->one()}};
        if (!jsq.contains(v)) {
            jsq.add(v);
            gens.push_back(i);
        }
    }
    return gens;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius-Lusztig kernel workbench"};
    app.require_subcommand(1);

    std::string type = "A1", part = "u", out, alg_path, config_path, cache_dir;
    long ell = 5, p = 0, r = 0, max_degree = 6, root = 1, gen_exp = 1, eps_exp = 5;
    bool dump_json = false, with_weights = false;
    std::vector<long> lambda_vec;

    auto* build = app.add_subcommand("build", "build an algebra and export its dump");
    build->add_option("--type", type, "root datum, e.g. A1, A2, B2");
    build->add_option("--ell", ell, "order of the root of unity (odd)");
    build->add_option("--p", p, "characteristic (0 for Q(xi))");
    build->add_option("--r", r, "kernel height (A1 divided powers when r > 0)");
    build->add_option("--part", part, "u, b or g");
    build->add_option("--out", out, "output path");
    build->add_flag("--dump-json", dump_json, "pretty-print the dump to stdout");

    auto* betti = app.add_subcommand("betti", "Betti numbers of a dumped local algebra");
    betti->add_option("--alg", alg_path, "algebra dump produced by 'build'")->required();
    betti->add_option("--max-degree", max_degree, "homological degree bound");
    betti->add_flag("--weights", with_weights, "include the generator weight multisets");
    betti->add_option("--out", out, "output CSV path (default stdout)");

    auto* verma = app.add_subcommand("verma", "character of a baby Verma module");
    verma->add_option("--type", type);
    verma->add_option("--ell", ell);
    verma->add_option("--p", p);
    verma->add_option("--r", r);
    verma->add_option("--lambda", lambda_vec, "highest weight coordinates")->required();
    verma->add_option("--out", out);

    auto* simples = app.add_subcommand("simples", "dimensions and characters of the simple heads");
    simples->add_option("--type", type);
    simples->add_option("--ell", ell);
    simples->add_option("--p", p);
    simples->add_option("--r", r);
    simples->add_option("--out", out);

    auto* restrict_cmd = app.add_subcommand("restrict", "restriction matrices on cohomology");
    std::string big = "A2", small = "A1";
    restrict_cmd->add_option("--big", big, "ambient root datum");
    restrict_cmd->add_option("--small", small, "embedded root datum (A1)");
    restrict_cmd->add_option("--root", root, "simple root of the embedding (1-based)");
    restrict_cmd->add_option("--ell", ell);
    restrict_cmd->add_option("--max-degree", max_degree);
    restrict_cmd->add_option("--out", out);

    auto* cocycle = app.add_subcommand("cocycle-check", "cobar differential of the f2 cocycle");
    cocycle->add_option("--p", p)->required();
    cocycle->add_option("--ell", ell);
    cocycle->add_option("--r", r)->required();
    cocycle->add_option("--gen", gen_exp, "divided-power exponent of the generator");
    cocycle->add_option("--eps", eps_exp, "exponent sum the cocycle detects");

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->add_option("--config", config_path, "key = value config file");
    std::vector<int> check_ids;
    verify->add_option("--check", check_ids, "run only these check ids");
    verify->add_option("--cache-dir", cache_dir, "algebra dump cache (or FLK_CACHE_DIR)");
    verify->add_option("--out", out, "report path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            FieldPtr F = make_field(p, ell);
            BasedAlgebra A;
            json recipe;
            if (r > 0) {
                if (type != "A1") throw BadParameters("divided-power kernels require --type A1");
                A = build_dividedpower_kernel_A1(F, r, part[0]).algebra();
                recipe = {{"builder", "kernel_a1"}, {"r", r}, {"part", part}};
            } else {
                A = build_small_quantum(datum_of(type), F, part[0]).algebra();
                recipe = {{"builder", "small_quantum"}, {"type", type}, {"part", part}};
            }
            json j = algebra_to_json(A, recipe);
            if (!out.empty()) write_json_file(j, out);
            if (dump_json || out.empty()) std::cout << j.dump(2) << "\n";
            std::cerr << A.kind << ": dim " << A.dim() << "\n";
        } else if (*betti) {
            auto A = std::make_shared<BasedAlgebra>(algebra_from_json(read_json_file(alg_path)));
            auto res = minimal_resolution(A, static_cast<size_t>(max_degree),
                                          minimal_generator_indices(*A));
            std::ofstream file;
            auto& os = open_or_stdout(file, out);
            os << (with_weights ? "n,b_n,weights\n" : "n,b_n\n");
            for (size_t n = 0; n < res.gens.size(); ++n) {
                os << n << "," << res.gens[n].size();
                if (with_weights) {
                    os << ",";
                    for (size_t i = 0; i < res.gens[n].size(); ++i)
                        os << (i ? " " : "") << res.gens[n][i].w.str();
                }
                os << "\n";
            }
        } else if (*verma || *simples) {
            FieldPtr F = make_field(p, ell);
            auto emit_character = [&](std::ostream& os, const Character& ch) {
                bool first = true;
                for (const auto& [w, m] : ch.mult) {
                    os << (first ? "" : " ") << w.str() << ":" << m;
                    first = false;
                }
            };
            std::ofstream file;
            auto& os = open_or_stdout(file, out);
            if (*verma) {
                FLModule Z = r > 0 ? baby_verma(build_dividedpower_kernel_A1(F, r, 'g'),
                                                lambda_vec.at(0))
                                   : baby_verma(build_small_quantum(datum_of(type), F, 'g'),
                                                Weight{lambda_vec});
                os << "dim," << Z.dim() << "\n";
                emit_character(os, character(Z));
                os << "\n";
            } else {
                os << "lambda,dim,character\n";
                if (r > 0) {
                    if (type != "A1") throw BadParameters("kernel simples require --type A1");
                    KernelA1 K = build_dividedpower_kernel_A1(F, r, 'g');
                    long top = ell;
                    for (long i = 1; i <= r; ++i) top *= p;
                    for (long lam = 0; lam < top; ++lam) {
                        auto [L, ch] = simple_head(baby_verma(K, lam));
                        os << lam << "," << L.dim() << ",";
                        emit_character(os, ch);
                        os << "\n";
                    }
                } else {
                    SmallQuantum U = build_small_quantum(datum_of(type), F, 'g');
                    for (const Weight& lam : restricted_weights(datum_of(type), p, 0, ell)) {
                        auto [L, ch] = simple_head(baby_verma(U, lam));
                        os << lam.str() << "," << L.dim() << ",";
                        emit_character(os, ch);
                        os << "\n";
                    }
                }
            }
        } else if (*restrict_cmd) {
            if (small != "A1") throw BadParameters("only A1 embeddings are supported");
            FieldPtr F = make_field(0, ell);
            RootDatum RB = datum_of(big);
            auto US = build_small_quantum(build_root_datum('A', 1), F, 'u');
            auto UB = build_small_quantum(RB, F, 'u');
            auto AS = std::make_shared<BasedAlgebra>(US.algebra());
            auto AB = std::make_shared<BasedAlgebra>(UB.algebra());
            auto resS = minimal_resolution(AS, static_cast<size_t>(max_degree),
                                           {US.index_of(US.gen_mono('F', 0))});
            auto resB = minimal_resolution(AB, static_cast<size_t>(max_degree),
                                           minimal_generator_indices(*AB));
            std::vector<SparseVec> emb(AS->dim());
            for (size_t a = 0; a < AS->dim(); ++a) {
                auto m = US.mono_at(a);
                emb[a] = SparseVec{
                    {UB.index_of(UB.gen_mono('F', static_cast<int>(root - 1), m.f[0])), F->one()}};
            }
            auto mats = restriction_on_cohomology(resS, resB, emb);
            std::ofstream file;
            auto& os = open_or_stdout(file, out);
            for (size_t n = 0; n < mats.size(); ++n) {
                os << "H^" << n << " (" << mats[n].size() << " x "
                   << (mats[n].empty() ? 0 : mats[n][0].size()) << ")\n";
                for (const auto& row : mats[n]) {
                    for (size_t c = 0; c < row.size(); ++c)
                        os << (c ? " " : "") << row[c].str();
                    os << "\n";
                }
            }
        } else if (*cocycle) {
            FieldPtr F = make_field(p, ell);
            KernelA1 K = build_dividedpower_kernel_A1(F, r, 'u');
            auto A = K.algebra();
            bool ok = cobar_f2_check(A, K.index_of(gen_exp, 0, 0), eps_exp);
            std::cout << "generator F^(" << gen_exp << "), eps = " << eps_exp << ": delta f2 "
                      << (ok ? "= 0" : "!= 0") << "\n";
            return ok ? 0 : 1;
        } else if (*verify) {
            VerifySuiteConfig cfg;
            if (!config_path.empty()) cfg = parse_config_file(config_path);
            if (!check_ids.empty()) cfg.checks = check_ids;
            if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
            auto results = run_verify(cfg);
            json report = report_to_json(results, cfg);
            if (!out.empty()) write_json_file(report, out);
            std::cout << report.dump(2) << "\n";
            for (const auto& res : results)
                if (!res.pass) return 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
