// Command-line front end over the C API: validation, derived relations,
// amalgamation, chain construction, reconstruction, fuzzing, DOT export.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arbor_c.h"

namespace {

struct TobDeleter {
    void operator()(arbor_tob* t) const { arbor_tob_free(t); }
};
using TobPtr = std::unique_ptr<arbor_tob, TobDeleter>;

struct StrDeleter {
    void operator()(char* s) const { arbor_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

class CliError : public std::runtime_error {
  public:
    explicit CliError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError("domain: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void check(int rc, char* err_msg) {
    StrPtr owned(err_msg);
    if (rc == ARBOR_OK) return;
    throw CliError(owned ? owned.get() : "internal: unknown error");
}

TobPtr load_tob(const std::string& path) {
    arbor_tob* t = nullptr;
    char* err = nullptr;
    check(arbor_tob_parse(read_file(path).c_str(), &t, &err), err);
    return TobPtr(t);
}

void emit(char* s) {
    StrPtr owned(s);
    if (owned) std::cout << owned.get();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operations on finite coloured trees of B-sets"};
    app.require_subcommand(1);

    std::string path1, path2, path3, a, b, c, elem;
    std::string preset = "omega-star";
    int steps = 10, cases = 100;
    std::uint64_t seed = 0;

    auto* validate = app.add_subcommand("validate", "structurally validate a TOB file");
    validate->add_option("tob", path1)->required();

    auto* compile_l = app.add_subcommand("compile-l", "derived relation L as LSET text");
    compile_l->add_option("tob", path1)->required();

    auto* witness = app.add_subcommand("witness", "node witnessing L(a;b,c)");
    witness->add_option("tob", path1)->required();
    witness->add_option("a", a)->required();
    witness->add_option("b", b)->required();
    witness->add_option("c", c)->required();

    auto* amalgamate = app.add_subcommand("amalgamate", "amalgamate two extensions over a base");
    amalgamate->add_option("base", path1)->required();
    amalgamate->add_option("e1", path2)->required();
    amalgamate->add_option("e2", path3)->required();

    auto* decompose = app.add_subcommand("decompose", "one-point decomposition chain");
    decompose->add_option("base", path1)->required();
    decompose->add_option("ext", path2);

    auto* joint = app.add_subcommand("joint-embed", "jointly embed two structures");
    joint->add_option("tob1", path1)->required();
    joint->add_option("tob2", path2)->required();

    auto* chain = app.add_subcommand("chain", "deterministic generic chain");
    chain->add_option("--preset", preset);
    chain->add_option("--steps", steps);
    chain->add_option("--seed", seed);

    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a TOB from LSET text");
    reconstruct->add_option("lset", path1)->required();
    reconstruct->add_option("--preset", preset);

    auto* derive = app.add_subcommand("derive-c", "derived C-relation at a root vertex");
    derive->add_option("tob", path1)->required();
    derive->add_option("elem", elem)->required();

    auto* orbits = app.add_subcommand("orbits", "automorphism orbits on root-vertex triples");
    orbits->add_option("tob", path1)->required();

    auto* fuzz = app.add_subcommand("fuzz", "randomized self-check");
    fuzz->add_option("--preset", preset);
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--cases", cases);

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
    dot->add_option("tob", path1)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "ERR usage: " << e.what() << "\n";
        return 2;
    }

    try {
        char* out = nullptr;
        char* err = nullptr;
        if (validate->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_tob_validate(t.get(), &err), err);
            std::cout << "ok\n";
        } else if (compile_l->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_compile_l(t.get(), &out, &err), err);
            emit(out);
        } else if (witness->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_witness(t.get(), a.c_str(), b.c_str(), c.c_str(), &out, &err), err);
            emit(out);
            std::cout << "\n";
        } else if (amalgamate->parsed()) {
            TobPtr base = load_tob(path1), e1 = load_tob(path2), e2 = load_tob(path3);
            check(arbor_amalgamate(base.get(), e1.get(), e2.get(), &out, &err), err);
            emit(out);
        } else if (decompose->parsed()) {
            if (path2.empty()) {
                TobPtr e = load_tob(path1);
                check(arbor_decompose(nullptr, e.get(), &out, &err), err);
            } else {
                TobPtr base = load_tob(path1), e = load_tob(path2);
                check(arbor_decompose(base.get(), e.get(), &out, &err), err);
            }
            emit(out);
        } else if (joint->parsed()) {
            TobPtr t1 = load_tob(path1), t2 = load_tob(path2);
            check(arbor_joint_embed(t1.get(), t2.get(), &out, &err), err);
            emit(out);
        } else if (chain->parsed()) {
            char* log = nullptr;
            check(arbor_chain(preset.c_str(), steps, seed, &out, &log, &err), err);
            StrPtr owned_log(log);
            if (owned_log) std::cerr << owned_log.get();
            emit(out);
        } else if (reconstruct->parsed()) {
            check(arbor_reconstruct(read_file(path1).c_str(), preset.c_str(), &out, &err), err);
            emit(out);
        } else if (derive->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_derive_c(t.get(), elem.c_str(), &out, &err), err);
            emit(out);
        } else if (orbits->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_orbits(t.get(), &out, &err), err);
            emit(out);
        } else if (fuzz->parsed()) {
            check(arbor_fuzz(preset.c_str(), seed, cases, &out, &err), err);
            emit(out);
        } else if (dot->parsed()) {
            TobPtr t = load_tob(path1);
            check(arbor_export_dot(t.get(), &out, &err), err);
            emit(out);
        }
    } catch (const CliError& e) {
        std::cerr << "ERR " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "ERR internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
