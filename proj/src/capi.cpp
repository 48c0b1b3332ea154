#include "tribill.h"

#include <memory>
#include <mutex>
#include <string>

#include <tbb/global_control.h>

#include "tribill/service.hpp"
#include "tribill/unfolding.hpp"
#include "tribill/word.hpp"

struct tribill_result {
    tribill_status status = TRIBILL_OK;
    std::string json;
    std::string bytes;
    std::string content_type;
};

struct tribill_unfolding {
    std::unique_ptr<tribill::Unfolding> u;
};

namespace {

thread_local std::string last_error;

tribill_status to_status(tribill::ErrorKind k) {
    switch (k) {
        case tribill::ErrorKind::InvalidArgument: return TRIBILL_INVALID_ARGUMENT;
        case tribill::ErrorKind::Precondition: return TRIBILL_PRECONDITION;
        case tribill::ErrorKind::Unsupported: return TRIBILL_UNSUPPORTED;
        case tribill::ErrorKind::Internal: return TRIBILL_INTERNAL;
    }
    return TRIBILL_INTERNAL;
}

template <class F>
tribill_status guard(F f) {
    try {
        f();
        last_error.clear();
        return TRIBILL_OK;
    } catch (const tribill::Error& e) {
        last_error = e.what();
        return to_status(e.kind());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return TRIBILL_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TRIBILL_INTERNAL;
    }
}

tribill::ErrorKind kind_of(tribill_status s) {
    switch (s) {
        case TRIBILL_INVALID_ARGUMENT: return tribill::ErrorKind::InvalidArgument;
        case TRIBILL_PRECONDITION: return tribill::ErrorKind::Precondition;
        case TRIBILL_UNSUPPORTED: return tribill::ErrorKind::Unsupported;
        default: return tribill::ErrorKind::Internal;
    }
}

tribill_status finish(tribill_status s, tribill::Reply* reply, tribill_result** out) {
    if (!out) return s;
    auto* r = new tribill_result;
    r->status = s;
    if (s == TRIBILL_OK) {
        r->content_type = reply->content_type.empty() ? "application/json" : reply->content_type;
        if (reply->content_type.empty())
            r->json = tribill::canonical_json(reply->body);
        else
            r->bytes = std::move(reply->bytes);
    } else {
        r->content_type = "application/json";
        r->json = tribill::canonical_json(tribill::error_body(kind_of(s), last_error));
    }
    *out = r;
    return s;
}

}  // namespace

extern "C" {

const char* tribill_version(void) { return "1.0.0"; }

const char* tribill_status_name(tribill_status s) {
    switch (s) {
        case TRIBILL_OK: return "ok";
        case TRIBILL_INVALID_ARGUMENT: return "invalid_argument";
        case TRIBILL_PRECONDITION: return "precondition";
        case TRIBILL_UNSUPPORTED: return "unsupported";
        case TRIBILL_INTERNAL: return "internal";
    }
    return "unknown";
}

tribill_status tribill_call(const char* op, const char* params_json, tribill_result** out) {
    if (out) *out = nullptr;
    tribill::Reply reply;
    tribill_status s = guard([&] {
        if (!op) tribill::fail_arg("op is null");
        nlohmann::json params = params_json && *params_json ? nlohmann::json::parse(params_json) : nlohmann::json::object();
        reply = tribill::run_op(op, params);
    });
    return finish(s, &reply, out);
}

tribill_status tribill_request(const char* envelope_json, tribill_result** out) {
    if (out) *out = nullptr;
    tribill::Reply reply;
    tribill_status s = guard([&] {
        if (!envelope_json) tribill::fail_arg("request is null");
        reply = tribill::run_request(nlohmann::json::parse(envelope_json));
    });
    return finish(s, &reply, out);
}

tribill_status tribill_request_text(const char* envelope_json, tribill_result** out) {
    if (out) *out = nullptr;
    tribill::Reply reply;
    tribill_status s = guard([&] {
        if (!envelope_json) tribill::fail_arg("request is null");
        reply = tribill::run_request(nlohmann::json::parse(envelope_json), true);
    });
    return finish(s, &reply, out);
}

tribill_status tribill_set_threads(int threads) {
    static std::mutex mu;
    static std::unique_ptr<tbb::global_control> control;
    return guard([&] {
        if (threads < 0) tribill::fail_arg("threads must be non-negative");
        std::lock_guard<std::mutex> lock(mu);
        control.reset();
        if (threads > 0)
            control = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism, size_t(threads));
    });
}

tribill_status tribill_result_status(const tribill_result* r) { return r ? r->status : TRIBILL_INVALID_ARGUMENT; }

const char* tribill_result_json(const tribill_result* r) { return r ? r->json.c_str() : ""; }

const unsigned char* tribill_result_bytes(const tribill_result* r, size_t* size) {
    if (size) *size = r ? r->bytes.size() : 0;
    return r ? reinterpret_cast<const unsigned char*>(r->bytes.data()) : nullptr;
}

const char* tribill_result_content_type(const tribill_result* r) { return r ? r->content_type.c_str() : ""; }

void tribill_result_free(tribill_result* r) { delete r; }

const char* tribill_operations(void) {
    static const std::string names = [] {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& op : tribill::operations()) j.push_back(op.name);
        return j.dump();
    }();
    return names.c_str();
}

tribill_status tribill_is_stable(const char* word, int* stable) {
    return guard([&] {
        if (!word || !stable) tribill::fail_arg("null argument");
        tribill::validate_word(word);
        *stable = tribill::is_stable_parity(word) ? 1 : 0;
    });
}

tribill_status tribill_unfolding_new(const char* word, double x1, double x2, tribill_unfolding** out) {
    return guard([&] {
        if (!word || !out) tribill::fail_arg("null argument");
        *out = nullptr;
        tribill::validate_word(word);
        auto h = std::make_unique<tribill_unfolding>();
        h->u = std::make_unique<tribill::Unfolding>(word, tribill::ParameterPoint{x1, x2});
        *out = h.release();
    });
}

size_t tribill_unfolding_vertex_count(const tribill_unfolding* u) { return u ? u->u->vertex_count() : 0; }

tribill_status tribill_unfolding_vertex(const tribill_unfolding* u, size_t i, double* x, double* y) {
    return guard([&] {
        if (!u || !x || !y) tribill::fail_arg("null argument");
        if (i >= u->u->vertex_count()) tribill::fail_arg("vertex index out of range");
        tribill::cplx p = u->u->normalized(int(i));
        *x = p.real();
        *y = p.imag();
    });
}

tribill_status tribill_unfolding_holonomy(const tribill_unfolding* u, double* x, double* y) {
    return guard([&] {
        if (!u || !x || !y) tribill::fail_arg("null argument");
        tribill::cplx h = u->u->holonomy();
        *x = h.real();
        *y = h.imag();
    });
}

tribill_status tribill_unfolding_membership(const tribill_unfolding* u, int* member, double* separation) {
    return guard([&] {
        if (!u || !member || !separation) tribill::fail_arg("null argument");
        if (!u->u->stable()) tribill::fail_pre("membership needs a stable word");
        tribill::Membership m = tribill::membership(*u->u);
        *member = m.member ? 1 : 0;
        *separation = m.separation;
    });
}

void tribill_unfolding_free(tribill_unfolding* u) { delete u; }

const char* tribill_last_error(void) { return last_error.c_str(); }

}  // extern "C"
