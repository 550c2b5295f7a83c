#include "stokes_gauss.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_precondition = 2;
constexpr int exit_usage = 64;

using json = nlohmann::json;

struct Failure {
    int code;
};

struct DocDeleter {
    void operator()(sg_document* d) const { sg_document_free(d); }
};
using DocPtr = std::unique_ptr<sg_document, DocDeleter>;

std::string owned(char* s) {
    std::string out(s);
    sg_string_free(s);
    return out;
}

void check(sg_status st) {
    if (st == SG_OK) return;
    std::cout << sg_last_error_json() << "\n";
    throw Failure{st == SG_ERR_INVALID_ARGUMENT ? exit_usage : exit_precondition};
}

[[noreturn]] void input_failure(const std::string& message) {
    std::cout << json{{"error", {{"code", "InvalidArgument"}, {"message", message}, {"path", nullptr}}}}.dump() << "\n";
    throw Failure{exit_precondition};
}

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) input_failure("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DocPtr load(const std::string& path) {
    sg_document* d = nullptr;
    check(sg_document_parse(read_input(path).c_str(), &d));
    return DocPtr(d);
}

void print_document(sg_document* d) {
    DocPtr owner(d);
    char* text = nullptr;
    check(sg_document_serialize(d, &text));
    std::cout << owned(text);
}

std::uint64_t effective_seed(std::uint64_t flag) {
    const char* env = std::getenv("STOKES_GAUSS_SEED");
    if (!env || !*env) return flag;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') input_failure("STOKES_GAUSS_SEED must be a non-negative integer");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Stokes data of pure Gaussian type connections"};
    app.set_version_flag("--version", std::string(sg_version()));
    app.require_subcommand(1);

    std::string file;
    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "input document, - for stdin")->required(); };

    auto* validate = app.add_subcommand("validate", "check all invariants; exit 1 on violation");
    add_file(validate);
    auto* normalize = app.add_subcommand("normalize", "normalized matrix form");
    add_file(normalize);
    auto* to_filt = app.add_subcommand("to-filtrations", "convert to filtration form");
    add_file(to_filt);
    auto* to_mat = app.add_subcommand("to-matrices", "convert to matrix form");
    add_file(to_mat);

    bool inverse = false;
    auto* laplace = app.add_subcommand("laplace", "Laplace transform of aligned data");
    add_file(laplace);
    laplace->add_flag("--inverse", inverse, "inverse transform");

    std::string c0;
    bool strict = false;
    auto* coh = app.add_subcommand("cohomology", "cohomology of the filtration step at c0 on the circle");
    add_file(coh);
    coh->add_option("--c0", c0, "exponent, e.g. 3/1 or 1+2i")->required();
    coh->add_flag("--strict", strict, "use L_{<c0} instead of L_{<=c0}");

    auto* disc = app.add_subcommand("disc-cohomology", "cohomology of F_{<=0} on the closed disc");
    add_file(disc);
    auto* rig = app.add_subcommand("rigidity", "rigidity index");
    add_file(rig);

    int nu = 0;
    auto* split = app.add_subcommand("splitting", "splitting over the good interval of a chart");
    add_file(split);
    split->add_option("--nu", nu, "chart index")->check(CLI::Range(0, 3));

    int n = 0;
    std::vector<int> ranks;
    std::uint64_t seed = 0;
    bool aligned = false;
    auto* gen = app.add_subcommand("gen-random", "seeded random valid data over Q");
    gen->add_option("--n", n, "number of exponents")->required()->check(CLI::Range(1, 8));
    gen->add_option("--ranks", ranks, "comma-separated block ranks")->required()->delimiter(',')->check(CLI::Range(1, 16));
    gen->add_option("--seed", seed, "random seed");
    gen->add_flag("--aligned", aligned, "exponents on one ray, theta0 canonical");

    int samples = 5;
    std::string verify_file;
    auto* verify = app.add_subcommand("verify-laplace", "check the transformed filtrations against the disc oracle");
    verify->add_option("file", verify_file, "input document; without it, random aligned datasets are checked");
    verify->add_option("--samples", samples, "number of random datasets")->check(CLI::Range(1, 1000));
    verify->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*validate) {
            DocPtr d = load(file);
            int valid = 0;
            char* report = nullptr;
            check(sg_validate(d.get(), &valid, &report));
            std::cout << owned(report);
            return valid ? exit_ok : exit_invalid;
        }
        if (*normalize || *to_filt || *to_mat || *laplace) {
            DocPtr d = load(file);
            sg_document* out = nullptr;
            if (*normalize) check(sg_normalize(d.get(), &out));
            else if (*to_filt) check(sg_to_filtrations(d.get(), &out));
            else if (*to_mat) check(sg_to_matrices(d.get(), &out));
            else check(sg_laplace(d.get(), inverse ? 1 : 0, &out));
            print_document(out);
            return exit_ok;
        }
        if (*coh) {
            DocPtr d = load(file);
            long h0 = 0, h1 = 0, chi = 0;
            check(sg_cohomology(d.get(), c0.c_str(), strict ? 1 : 0, &h0, &h1, &chi));
            std::cout << json{{"chi", chi}, {"h0", h0}, {"h1", h1}}.dump() << "\n";
            return exit_ok;
        }
        if (*disc) {
            DocPtr d = load(file);
            long h0 = 0, h1 = 0, h2 = 0;
            check(sg_disc_cohomology(d.get(), &h0, &h1, &h2));
            std::cout << json{{"h0", h0}, {"h1", h1}, {"h2", h2}}.dump() << "\n";
            return exit_ok;
        }
        if (*rig) {
            DocPtr d = load(file);
            long value = 0;
            int rigid = 0;
            check(sg_rigidity(d.get(), &value, &rigid));
            std::cout << json{{"rig", value}, {"rigid", rigid != 0}}.dump() << "\n";
            return exit_ok;
        }
        if (*split) {
            DocPtr d = load(file);
            char* out = nullptr;
            check(sg_splitting(d.get(), nu, &out));
            std::cout << owned(out) << "\n";
            return exit_ok;
        }
        if (*gen) {
            if (static_cast<int>(ranks.size()) != n) {
                std::cerr << "--ranks must list exactly --n values\n";
                return exit_usage;
            }
            sg_document* out = nullptr;
            check(sg_gen_random(n, ranks.data(), effective_seed(seed), aligned ? 1 : 0, &out));
            print_document(out);
            return exit_ok;
        }
        if (*verify) {
            int pass = 0;
            char* report = nullptr;
            if (verify_file.empty()) {
                check(sg_verify_laplace_random(samples, effective_seed(seed), &pass, &report));
            } else {
                DocPtr d = load(verify_file);
                check(sg_verify_laplace(d.get(), &pass, &report));
            }
            std::cout << owned(report);
            return pass ? exit_ok : exit_invalid;
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return exit_usage;
}
