// Command-line entry point and HTTP service. Both go through the C API; the
// subcommands and their flags are generated from the operation schemas.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "tribill.h"

using json = nlohmann::json;

namespace {

struct Answer {
    tribill_status status = TRIBILL_OK;
    std::string body;
    std::string content_type;
};

Answer request_text(const json& envelope) {
    tribill_result* r = nullptr;
    Answer a;
    a.status = tribill_request_text(envelope.dump().c_str(), &r);
    size_t n = 0;
    const unsigned char* bytes = tribill_result_bytes(r, &n);
    a.content_type = tribill_result_content_type(r);
    a.body = n ? std::string(reinterpret_cast<const char*>(bytes), n) : std::string(tribill_result_json(r));
    tribill_result_free(r);
    return a;
}

json spec() {
    tribill_result* r = nullptr;
    tribill_call("spec", "{}", &r);
    json j = json::parse(tribill_result_json(r));
    tribill_result_free(r);
    return j;
}

int http_code(tribill_status s) {
    switch (s) {
        case TRIBILL_OK: return 200;
        case TRIBILL_INVALID_ARGUMENT: return 400;
        case TRIBILL_PRECONDITION:
        case TRIBILL_UNSUPPORTED: return 422;
        default: return 500;
    }
}

int exit_code(tribill_status s) {
    if (s == TRIBILL_OK) return 0;
    return s == TRIBILL_INVALID_ARGUMENT ? 2 : 1;
}

struct OpFlags {
    std::string name;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::map<std::string, std::string> types;
};

void cors(httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& msg) {
    res.status = status;
    res.set_content(json{{"error", kind}, {"message", msg}, {"status", status}}.dump(), "application/json");
}

// Runs the request on a worker; answers 503 if it outlives the budget.
void answer(httplib::Response& res, const json& envelope, double timeout_s, bool text) {
    auto task = std::make_shared<std::packaged_task<Answer()>>([envelope, text] {
        if (text) return request_text(envelope);
        tribill_result* r = nullptr;
        Answer a;
        a.status = tribill_request(envelope.dump().c_str(), &r);
        size_t n = 0;
        const unsigned char* bytes = tribill_result_bytes(r, &n);
        a.content_type = tribill_result_content_type(r);
        a.body = n ? std::string(reinterpret_cast<const char*>(bytes), n) : std::string(tribill_result_json(r));
        tribill_result_free(r);
        return a;
    });
    std::future<Answer> fut = task->get_future();
    std::thread([task] { (*task)(); }).detach();
    if (timeout_s > 0 && fut.wait_for(std::chrono::duration<double>(timeout_s)) != std::future_status::ready) {
        send_error(res, 503, "timeout", "computation exceeded the request budget");
        return;
    }
    Answer a = fut.get();
    res.status = http_code(a.status);
    res.set_content(a.body, a.content_type.empty() ? "application/json" : a.content_type);
}

int serve(const std::string& host, int port, double timeout_s, int threads) {
    httplib::Server srv;
    if (threads > 0) srv.new_task_queue = [threads] { return new httplib::ThreadPool(size_t(threads)); };
    srv.set_post_routing_handler([](const httplib::Request&, httplib::Response& res) { cors(res); });
    srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    json paths = spec()["paths"];
    for (auto it = paths.begin(); it != paths.end(); ++it) {
        std::string path = it.key();
        std::string op = it.value()["get"]["operationId"];
        if (op == "unfolding") op = "unfold";
        bool certificate = op == "homology_certificate";
        if (certificate) op = "homology";
        srv.Get(path, [op, certificate, timeout_s](const httplib::Request& req, httplib::Response& res) {
            json params = json::object();
            for (const auto& [k, v] : req.params) {
                if (params.contains(k)) return send_error(res, 400, "invalid_argument", "repeated field '" + k + "'");
                params[k] = v;
            }
            if (certificate) {
                if (params.contains("what")) return send_error(res, 400, "invalid_argument", "unknown field 'what'");
                params["what"] = "certificate";
            }
            answer(res, {{"op", op}, {"params", params}}, timeout_s, true);
        });
    }
    srv.Post("/request", [timeout_s](const httplib::Request& req, httplib::Response& res) {
        json env;
        try {
            env = json::parse(req.body);
        } catch (const json::exception& e) {
            return send_error(res, 400, "invalid_argument", e.what());
        }
        answer(res, env, timeout_s, false);
    });
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.status == 404) send_error(res, 404, "not_found", "no such endpoint");
    });
    std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
    return srv.listen(host, port) ? 0 : 1;
}

int write_out(const std::string& path, const Answer& a) {
    if (path.empty()) {
        std::fwrite(a.body.data(), 1, a.body.size(), stdout);
        if (a.content_type == "application/json") std::fputc('\n', stdout);
        return exit_code(a.status);
    }
    if (a.status != TRIBILL_OK) {
        std::fprintf(stdout, "%s\n", a.body.c_str());
        return exit_code(a.status);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stdout, "%s\n", json{{"error", "io"}, {"message", "cannot write " + path}}.dump().c_str());
        return 1;
    }
    f.write(a.body.data(), std::streamsize(a.body.size()));
    std::fprintf(stdout, "%s\n", json{{"written", path}, {"bytes", a.body.size()}, {"content_type", a.content_type}}.dump().c_str());
    return 0;
}

// Streams one NDJSON event per criterion, then a summary line.
int verify(const std::string& criteria) {
    std::vector<std::string> ids;
    if (criteria == "all")
        for (int i = 1; i <= 10; ++i) ids.push_back(std::to_string(i));
    else {
        std::stringstream ss(criteria);
        std::string item;
        while (std::getline(ss, item, ',')) ids.push_back(item);
    }
    int passed = 0, total = 0;
    for (const std::string& id : ids) {
        Answer a = request_text({{"op", "verify"}, {"params", {{"criteria", id}}}});
        if (a.status != TRIBILL_OK) {
            std::printf("%s\n", a.body.c_str());
            return exit_code(a.status);
        }
        const json doc = json::parse(a.body);
        for (const json& r : doc["results"]) {
            json ev = r;
            ev["event"] = "criterion";
            std::printf("%s\n", ev.dump().c_str());
            std::fflush(stdout);
            passed += r["pass"].get<bool>();
            ++total;
        }
    }
    std::printf("%s\n", json{{"event", "summary"}, {"suite", "primary"}, {"passed", passed}, {"total", total}}.dump().c_str());
    return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic billiard paths in triangles near the Veech points"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tribill_version());
    double tolerance = -1;
    int threads = 0;
    std::string out;
    app.add_option("--tolerance", tolerance, "membership separation margin")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", threads, "worker threads (0 = all)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", out, "write the answer to a file");

    std::vector<std::unique_ptr<OpFlags>> ops;
    json paths = spec()["paths"];
    for (auto it = paths.begin(); it != paths.end(); ++it) {
        const json& get = it.value()["get"];
        std::string name = get["operationId"];
        if (name == "unfolding" || name == "homology_certificate" || name == "spec" || name == "verify") continue;
        auto f = std::make_unique<OpFlags>();
        f->name = name;
        CLI::App* sub = app.add_subcommand(name, get["summary"].get<std::string>());
        for (const json& p : get["parameters"]) {
            std::string pname = p["name"], type = p["schema"]["type"];
            f->types[pname] = type;
            std::string doc = p["description"];
            if (p["schema"].contains("enum")) doc += " (" + p["schema"]["enum"].dump() + ")";
            if (type == "boolean")
                sub->add_flag("--" + pname, f->flags[pname], doc);
            else if (pname == "what")
                sub->add_option("what,--what", f->values[pname], doc);
            else
                sub->add_option("--" + pname, f->values[pname], doc);
        }
        if (f->types.count("format")) {
            sub->add_flag_callback("--svg", [v = &f->values] { (*v)["format"] = "svg"; }, "same as --format svg");
            if (name == "tile") sub->add_flag_callback("--png", [v = &f->values] { (*v)["format"] = "png"; }, "same as --format png");
        }
        ops.push_back(std::move(f));
    }
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run the acceptance suite, one JSON event per criterion");
    std::string suite = "primary", criteria = "all";
    verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"primary"}));
    verify_cmd->add_option("--criteria", criteria, "all or a list like 1,2,5");
    CLI::App* serve_cmd = app.add_subcommand("serve", "Stateless HTTP service");
    std::string host = "127.0.0.1";
    int port = 8080;
    double timeout_s = 120;
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--timeout", timeout_s, "seconds per request, 0 for none")->check(CLI::NonNegativeNumber);
    CLI::App* spec_cmd = app.add_subcommand("spec", "Print the OpenAPI description");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (threads > 0) tribill_set_threads(threads);

    if (*serve_cmd) return serve(host, port, timeout_s, threads);
    if (*verify_cmd) return verify(criteria);
    if (*spec_cmd) return write_out(out, request_text({{"op", "spec"}, {"params", json::object()}}));

    for (const auto& f : ops) {
        if (!app.got_subcommand(f->name)) continue;
        json params = json::object();
        CLI::App* sub = app.get_subcommand(f->name);
        for (const auto& [k, v] : f->values)
            if (sub->count(k == "what" ? "what" : "--" + k) || (k == "format" && !v.empty())) params[k] = v;
        for (const auto& [k, v] : f->flags)
            if (v) params[k] = "true";
        json env = {{"op", f->name}, {"params", params}};
        if (tolerance >= 0) {
            if (!f->types.count("tolerance")) {
                std::printf("%s\n", json{{"error", "invalid_argument"}, {"message", f->name + " takes no tolerance"}, {"status", 400}}.dump().c_str());
                return 2;
            }
            std::ostringstream t;
            t.precision(17);
            t << tolerance;
            params["tolerance"] = t.str();
            env["params"] = params;
        }
        return write_out(out, request_text(env));
    }
    return 2;
}
