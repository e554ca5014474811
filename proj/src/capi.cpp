#include "arbor_c.h"

#include <cstdlib>
#include <cstring>
#include <random>
#include <string>

#include "arbor/amalgam.hpp"
#include "arbor/fraisse.hpp"
#include "arbor/generator.hpp"
#include "arbor/io.hpp"
#include "arbor/reconstruct.hpp"

struct arbor_tob {
    arbor::TreeOfBSets t;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int code_of(arbor::Err e) {
    switch (e) {
        case arbor::Err::parse: return ARBOR_EPARSE;
        case arbor::Err::validate: return ARBOR_EVALIDATE;
        case arbor::Err::domain: return ARBOR_EDOMAIN;
        case arbor::Err::internal: return ARBOR_EINTERNAL;
    }
    return ARBOR_EINTERNAL;
}

template <typename Fn>
int guarded(char** err_msg, Fn&& fn) {
    if (err_msg) *err_msg = nullptr;
    try {
        fn();
        return ARBOR_OK;
    } catch (const arbor::Error& e) {
        if (err_msg) *err_msg = dup_string(std::string(arbor::err_code(e.code())) + ": " + e.what());
        return code_of(e.code());
    } catch (const std::exception& e) {
        if (err_msg) *err_msg = dup_string(std::string("internal: ") + e.what());
        return ARBOR_EINTERNAL;
    }
}

}  // namespace

extern "C" {

void arbor_string_free(char* s) { std::free(s); }

void arbor_tob_free(arbor_tob* t) { delete t; }

int arbor_tob_parse(const char* text, arbor_tob** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] { *out = new arbor_tob{arbor::parse_tob(text)}; });
}

int arbor_tob_serialize(const arbor_tob* t, char** out) {
    *out = nullptr;
    return guarded(nullptr, [&] { *out = dup_string(arbor::serialize_tob(t->t)); });
}

int arbor_tob_validate(const arbor_tob* t, char** err_msg) {
    return guarded(err_msg, [&] { arbor::validate(t->t); });
}

int arbor_compile_l(const arbor_tob* t, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(t->t);
        *out = dup_string(arbor::serialize_lset(arbor::compute_l(t->t)));
    });
}

int arbor_witness(const arbor_tob* t, const char* a, const char* b, const char* c, char** out,
                  char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(t->t);
        *out = dup_string(arbor::format_node(arbor::witness_node(t->t, a, b, c)));
    });
}

int arbor_amalgamate(const arbor_tob* base, const arbor_tob* e1, const arbor_tob* e2, char** out,
                     char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(base->t);
        arbor::validate(e1->t);
        arbor::validate(e2->t);
        *out = dup_string(arbor::serialize_tob(arbor::amalgamate(base->t, e1->t, e2->t).W));
    });
}

int arbor_decompose(const arbor_tob* base, const arbor_tob* ext, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(ext->t);
        std::vector<arbor::TreeOfBSets> steps;
        if (!base) {
            steps = arbor::decompose_chain(ext->t);
        } else {
            arbor::validate(base->t);
            arbor::literal_inclusion(base->t, ext->t);
            arbor::TreeOfBSets cur = base->t;
            std::vector<arbor::TreeOfBSets> up;
            while (!(cur == ext->t)) {
                cur = arbor::extend_step(cur, ext->t);
                up.push_back(cur);
            }
            steps.assign(up.rbegin(), up.rend());
            steps.push_back(base->t);
        }
        std::string text;
        bool first = true;
        for (const auto& step : steps) {
            if (!first) text += "---\n";
            first = false;
            text += arbor::serialize_tob(step);
        }
        *out = dup_string(text);
    });
}

int arbor_joint_embed(const arbor_tob* a1, const arbor_tob* a2, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(a1->t);
        arbor::validate(a2->t);
        *out = dup_string(arbor::serialize_tob(arbor::joint_embed(a1->t, a2->t).W));
    });
}

int arbor_chain(const char* preset, int steps, uint64_t seed, char** out, char** log,
                char** err_msg) {
    *out = nullptr;
    if (log) *log = nullptr;
    return guarded(err_msg, [&] {
        auto chain = arbor::ColorChain::from_token(preset);
        auto res = arbor::build_chain(chain, steps, seed);
        *out = dup_string(arbor::serialize_tob(res.M));
        if (log) {
            std::string lines;
            for (const auto& l : res.log) lines += l + "\n";
            *log = dup_string(lines);
        }
    });
}

int arbor_reconstruct(const char* lset_text, const char* preset, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        auto chain = arbor::ColorChain::from_token(preset);
        if (chain.preset != arbor::Preset::OmegaStar)
            arbor::fail(arbor::Err::domain, "reconstruction is defined over the omega-star chain");
        *out = dup_string(arbor::serialize_tob(arbor::recover(arbor::parse_lset(lset_text))));
    });
}

int arbor_derive_c(const arbor_tob* t, const char* p, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(t->t);
        auto d = arbor::derive_c(t->t, p);
        std::string text = std::string("typical-pairs ") + (d.typical_pair ? "yes" : "no") + "\n";
        if (d.typical_pair) text += "witness " + d.typical_witness + "\n";
        for (const auto& tr : d.c.triples)
            text += "C " + tr[0] + " " + tr[1] + " " + tr[2] + "\n";
        *out = dup_string(text);
    });
}

int arbor_orbits(const arbor_tob* t, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(t->t);
        std::string text;
        int i = 0;
        for (const auto& orbit : arbor::triple_orbits(t->t)) {
            text += "orbit " + std::to_string(i++) + ":";
            for (const auto& tr : orbit) text += " (" + tr[0] + ";" + tr[1] + "," + tr[2] + ")";
            text += "\n";
        }
        *out = dup_string(text);
    });
}

int arbor_fuzz(const char* preset, uint64_t seed, int cases, char** out, char** err_msg) {
    *out = nullptr;
    int rc = guarded(err_msg, [&] {
        auto chain = arbor::ColorChain::from_token(preset);
        if (cases < 1) arbor::fail(arbor::Err::domain, "cases must be positive");
        int roundtrips = 0, amalgams = 0;
        for (int i = 0; i < cases; ++i) {
            std::mt19937_64 rng(seed + static_cast<uint64_t>(i));
            arbor::TreeOfBSets A = arbor::random_tob(chain, arbor::GenParams{}, rng);
            if (!(arbor::parse_tob(arbor::serialize_tob(A)) == A))
                arbor::fail(arbor::Err::internal, "serialization round-trip mismatch");
            ++roundtrips;
            auto x1 = arbor::random_extension(A, rng);
            auto x2 = arbor::random_extension(A, rng);
            arbor::amalgamate_one_point(A, x1.E, x2.E);
            ++amalgams;
        }
        *out = dup_string("round-trips " + std::to_string(roundtrips) + "\namalgams " +
                          std::to_string(amalgams) + "\n");
    });
    return rc;
}

int arbor_export_dot(const arbor_tob* t, char** out, char** err_msg) {
    *out = nullptr;
    return guarded(err_msg, [&] {
        arbor::validate(t->t);
        *out = dup_string(arbor::export_dot(t->t));
    });
}

}  // extern "C"
