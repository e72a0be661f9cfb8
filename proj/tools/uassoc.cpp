// Command-line front end: tree enumeration, point normalization and
// composition, chain differentials with the d^2 convention check, homology
// reports, and face-poset export. All output is deterministic for fixed
// flags and seed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uassoc/chain.hpp"
#include "uassoc/enumerate.hpp"
#include "uassoc/homology.hpp"
#include "uassoc/io.hpp"
#include "uassoc/point.hpp"

using namespace uassoc;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBadPoint = 3;
constexpr int kExitSignFailure = 4;
constexpr int kExitIo = 5;

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "uassoc: error[" << code << "]: " << message << "\n";
    std::exit(code);
}

SignConvention resolve_convention(const std::string& name) {
    if (name == "validated") return SignConvention::validated_default();
    if (name == "paper") return SignConvention::classical();
    try {
        return SignConvention::from_string(name);
    } catch (const std::invalid_argument&) {
        fail(kExitUsage, "unknown convention '" + name + "' (use paper, validated, or 6 bits)");
    }
}

Json read_json_file(const std::string& path) {
    std::istream* in = &std::cin;
    std::ifstream file;
    if (path != "-") {
        file.open(path);
        if (!file) fail(kExitIo, "cannot open " + path);
        in = &file;
    }
    try {
        Json j;
        *in >> j;
        return j;
    } catch (const Json::exception& e) {
        fail(kExitBadPoint, std::string("invalid JSON: ") + e.what());
    }
}

LabeledPoint load_point(const std::string& path) {
    try {
        return point_from_json(read_json_file(path));
    } catch (const std::invalid_argument& e) {
        fail(kExitBadPoint, std::string("invalid point: ") + e.what());
    } catch (const TreeParseError& e) {
        fail(kExitBadPoint, std::string("invalid point: ") + e.what());
    } catch (const Json::exception& e) {
        fail(kExitBadPoint, std::string("invalid point: ") + e.what());
    }
}

void check_prime(long p) {
    if (p < 2) fail(kExitUsage, "modulus must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail(kExitUsage, "modulus must be a prime");
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of (unital) associahedra"};
    app.require_subcommand(1);

    std::string convention_name = "validated";
    app.add_option("--convention", convention_name,
                   "sign convention: paper, validated, or an explicit 6-bit vector");
    unsigned long long seed = 0;
    app.add_option("--seed", seed, "seed for randomized commands");

    // trees {enum,count}
    auto* trees = app.add_subcommand("trees", "enumerate or count trees");
    trees->fallthrough();
    auto* trees_enum = trees->add_subcommand("enum", "list trees in canonical order");
    trees_enum->fallthrough();
    int opt_leaves = 0, opt_corks = 0, opt_max_corks = 0;
    bool opt_binary = false, opt_cells = false;
    std::string format = "json";
    trees_enum->add_option("--leaves", opt_leaves)->required();
    trees_enum->add_option("--corks", opt_corks);
    trees_enum->add_option("--max-corks", opt_max_corks);
    trees_enum->add_flag("--binary", opt_binary, "binary trees with exactly --corks corks");
    trees_enum->add_flag("--cells", opt_cells, "cell trees with at most --max-corks corks");
    trees_enum->add_option("--format", format, "json or text");
    auto* trees_count = trees->add_subcommand("count", "closed-form binary tree count");
    trees_count->fallthrough();
    trees_count->add_option("--leaves", opt_leaves)->required();
    trees_count->add_option("--corks", opt_corks);

    // point {normalize,compose,equivalent}
    auto* point = app.add_subcommand("point", "operations on labeled points");
    point->fallthrough();
    std::vector<std::string> point_files;
    int slot = 1;
    auto* point_norm = point->add_subcommand("normalize", "rewrite to the normal form");
    point_norm->fallthrough();
    point_norm->add_option("file", point_files, "point JSON file, or - for stdin")
        ->expected(1);
    auto* point_comp = point->add_subcommand("compose", "operadic composition of two points");
    point_comp->fallthrough();
    point_comp->add_option("--slot", slot)->required();
    point_comp->add_option("files", point_files)->expected(2);
    auto* point_equiv = point->add_subcommand("equivalent", "same point of the quotient?");
    point_equiv->fallthrough();
    point_equiv->add_option("files", point_files)->expected(2);

    // chain {diff,d2check,axioms}
    auto* chain = app.add_subcommand("chain", "chain-operad computations");
    chain->fallthrough();
    std::string tree_text;
    int max_weight = 8;
    long modulus = 0;
    auto* chain_diff = chain->add_subcommand("diff", "differential of a basis monomial");
    chain_diff->fallthrough();
    chain_diff->add_option("--tree", tree_text)->required();
    chain_diff->add_option("--mod", modulus, "reduce coefficients mod a prime");
    auto* chain_d2 = chain->add_subcommand("d2check", "d^2 = 0 report and convention search");
    chain_d2->fallthrough();
    chain_d2->add_option("--max-weight", max_weight, "check generators with n+2m <= this");
    auto* chain_ax = chain->add_subcommand("axioms", "operad axioms on random monomials");
    chain_ax->fallthrough();
    int ax_count = 200;
    chain_ax->add_option("--count", ax_count);

    // homology
    auto* hom = app.add_subcommand("homology", "integer homology of a filtration stage");
    hom->fallthrough();
    int arity = 0, max_corks = 0;
    hom->add_option("--arity", arity)->required();
    hom->add_option("--max-corks", max_corks)->required();
    hom->add_option("--mod", modulus, "also report Betti numbers over F_p");

    // export
    auto* exp = app.add_subcommand("export", "face poset with boundary incidences");
    exp->fallthrough();
    std::string exp_format = "dot";
    exp->add_option("--arity", arity)->required();
    exp->add_option("--max-corks", max_corks);
    exp->add_option("--format", exp_format, "dot or json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        std::cerr << "uassoc: error[" << kExitUsage << "]: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (*trees_enum) {
            if (opt_binary == opt_cells)
                fail(kExitUsage, "choose exactly one of --binary / --cells");
            std::vector<Tree> out = opt_binary
                                        ? enumerate_binary(opt_leaves, opt_corks)
                                        : enumerate_cell_trees(opt_leaves, opt_max_corks, true);
            if (format == "json") {
                Json arr = Json::array();
                for (const Tree& t : out) arr.push_back(serialize_tree(t));
                print_json(arr);
            } else if (format == "text") {
                for (const Tree& t : out) std::cout << serialize_tree(t) << "\n";
            } else {
                fail(kExitUsage, "unknown format " + format);
            }
            return 0;
        }
        if (*trees_count) {
            std::cout << count_binary(opt_leaves, opt_corks).str() << "\n";
            return 0;
        }
        if (*point_norm) {
            print_json(point_to_json(normal_form(load_point(point_files.at(0)))));
            return 0;
        }
        if (*point_comp) {
            const LabeledPoint a = load_point(point_files.at(0));
            const LabeledPoint b = load_point(point_files.at(1));
            try {
                print_json(point_to_json(compose_point(a, slot, b)));
            } catch (const std::out_of_range& e) {
                fail(kExitBadPoint, e.what());
            }
            return 0;
        }
        if (*point_equiv) {
            const LabeledPoint a = load_point(point_files.at(0));
            const LabeledPoint b = load_point(point_files.at(1));
            std::cout << (equivalent(a, b) ? "true" : "false") << "\n";
            return 0;
        }
        if (*chain_diff) {
            Tree t = Tree::leaf();
            try {
                t = parse_tree(tree_text);
                if (!t.is_leaf() && !is_cell_tree(t))
                    fail(kExitUsage, "not a cell tree: " + tree_text);
            } catch (const TreeParseError& e) {
                fail(kExitUsage, e.what());
            }
            Differential d(resolve_convention(convention_name));
            ChainElement dx = d.of_tree(t);
            if (modulus != 0) {
                check_prime(modulus);
                ChainElement reduced;
                for (const auto& [key, coef] : dx.terms()) {
                    BigInt c = coef % modulus;
                    if (c < 0) c += modulus;
                    if (c != 0) reduced.add(parse_tree(key), c);
                }
                dx = reduced;
            }
            print_json(chain_to_json(dx));
            return 0;
        }
        if (*chain_d2) {
            const ConventionReport report = validate_sign_convention(max_weight);
            print_json(convention_report_json(report));
            if (!report.validated) {
                std::cerr << "uassoc: error[" << kExitSignFailure
                          << "]: no convention satisfies d^2 = 0\n";
                return kExitSignFailure;
            }
            const SignConvention requested = resolve_convention(convention_name);
            for (const auto& cand : report.candidates)
                if (cand.convention == requested && !cand.passes && convention_name != "paper") {
                    std::cerr << "uassoc: error[" << kExitSignFailure
                              << "]: requested convention fails d^2 = 0 at "
                              << cand.first_failure << "\n";
                    return kExitSignFailure;
                }
            return 0;
        }
        if (*chain_ax) {
            std::mt19937_64 rng(seed);
            std::vector<Tree> pool;
            for (int n = 0; n <= 4; ++n)
                for (const Tree& t : enumerate_cell_trees(n, 2, true))
                    if (node_count(t) <= 8) pool.push_back(t);
            long failures = 0;
            for (int it = 0; it < ax_count; ++it) {
                const Tree a = pool[rng() % pool.size()];
                const Tree b = pool[rng() % pool.size()];
                const Tree c = pool[rng() % pool.size()];
                const int pa = leaf_count(a), pb = leaf_count(b), pc = leaf_count(c);
                if (pa < 1) continue;
                const ChainElement ea = ChainElement::monomial(a),
                                   eb = ChainElement::monomial(b),
                                   ec = ChainElement::monomial(c);
                const int i = 1 + static_cast<int>(rng() % static_cast<unsigned>(pa));
                if (pb >= 1) {
                    const int j = i + static_cast<int>(rng() % static_cast<unsigned>(pb));
                    if (compose_chain(compose_chain(ea, i, eb), j, ec) !=
                        compose_chain(ea, i, compose_chain(eb, j - i + 1, ec)))
                        ++failures;
                }
                if (i >= 2) {
                    const int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(i - 1));
                    const int sgn =
                        (cell_degree(b) % 2 == 1 && cell_degree(c) % 2 == 1) ? -1 : 1;
                    if (compose_chain(compose_chain(ea, i, eb), j, ec) !=
                        compose_chain(compose_chain(ea, j, ec), i + pc - 1, eb).scaled(sgn))
                        ++failures;
                }
                if (compose_chain(ea, i, ChainElement::unit()) != ea) ++failures;
                if (compose_chain(ChainElement::unit(), 1, ea) != ea) ++failures;
            }
            std::cout << (failures == 0 ? "pass" : "FAIL") << " (" << ax_count
                      << " random triples, seed " << seed << ")\n";
            return failures == 0 ? 0 : 1;
        }
        if (*hom) {
            const SignConvention conv = resolve_convention(convention_name);
            const ChainComplexSlice slice = build_complex(arity, max_corks, conv);
            HomologySummary summary;
            try {
                summary = homology_summary(slice);
            } catch (const std::runtime_error& e) {
                fail(kExitSignFailure, e.what());
            }
            Json j = homology_report_json(slice, summary);
            if (modulus != 0) {
                check_prime(modulus);
                Json bp = Json::array();
                for (long b : betti_mod_p(slice, BigInt(modulus))) bp.push_back(b);
                j["mod"] = modulus;
                j["betti_mod_p"] = std::move(bp);
            }
            print_json(j);
            return 0;
        }
        if (*exp) {
            const SignConvention conv = resolve_convention(convention_name);
            const ChainComplexSlice slice = build_complex(arity, max_corks, conv);
            if (exp_format == "dot")
                std::cout << export_dot(slice);
            else if (exp_format == "json")
                print_json(export_json(slice));
            else
                fail(kExitUsage, "unknown format " + exp_format);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        fail(kExitUsage, e.what());
    } catch (const std::out_of_range& e) {
        fail(kExitUsage, e.what());
    } catch (const std::ios_base::failure& e) {
        fail(kExitIo, e.what());
    }
    return 0;
}
