#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "socnet/errors.hpp"
#include "socnet/llm.hpp"

namespace socnet {

using nlohmann::json;

HttpConfig load_http_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open http config: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    HttpConfig c;
    if (!j.contains("base_url") || !j.contains("model"))
        throw ConfigError(path + ": base_url and model are required");
    c.base_url = j["base_url"].get<std::string>();
    c.model = j["model"].get<std::string>();
    if (j.contains("temperature")) c.temperature = j["temperature"].get<double>();
    if (j.contains("api_key_env")) c.api_key_env = j["api_key_env"].get<std::string>();
    if (j.contains("max_transport_retries")) c.max_transport_retries = j["max_transport_retries"].get<int>();
    if (j.contains("timeout_seconds")) c.timeout_seconds = j["timeout_seconds"].get<int>();
    if (c.max_transport_retries < 0 || c.timeout_seconds < 1)
        throw ConfigError(path + ": retries must be >= 0 and timeout >= 1");
    return c;
}

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (!key || !*key) throw BackendError("environment variable " + config_.api_key_env + " is not set");
    api_key_ = key;

    // split scheme://host[:port][/prefix]
    std::size_t scheme = config_.base_url.find("://");
    if (scheme == std::string::npos) throw ConfigError("base_url must include a scheme: " + config_.base_url);
    std::size_t slash = config_.base_url.find('/', scheme + 3);
    if (slash == std::string::npos) {
        host_ = config_.base_url;
    } else {
        host_ = config_.base_url.substr(0, slash);
        prefix_ = config_.base_url.substr(slash);
        while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
}

ChatResult HttpBackend::complete(const std::string& system_text, const std::string& user_text) {
    json body;
    body["model"] = config_.model;
    body["temperature"] = config_.temperature;
    body["messages"] = json::array();
    if (!system_text.empty()) body["messages"].push_back({{"role", "system"}, {"content", system_text}});
    body["messages"].push_back({{"role", "user"}, {"content", user_text}});
    const std::string payload = body.dump();
    const std::string path = prefix_ + "/chat/completions";

    httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_transport_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100) * (1 << (attempt - 1)));
        httplib::Client client(host_);
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw BackendError("chat request failed with status " + std::to_string(res->status) + ": " + res->body);
        try {
            json reply = json::parse(res->body);
            ChatResult out;
            out.reply = reply.at("choices").at(0).at("message").at("content").get<std::string>();
            if (reply.contains("usage")) {
                out.input_tokens = reply["usage"].value("prompt_tokens", 0L);
                out.output_tokens = reply["usage"].value("completion_tokens", 0L);
            } else {
                out.input_tokens = whitespace_token_count(system_text) + whitespace_token_count(user_text);
                out.output_tokens = whitespace_token_count(out.reply);
            }
            return out;
        } catch (const json::exception& e) {
            throw BackendError(std::string("malformed chat response: ") + e.what());
        }
    }
    throw BackendError("chat request failed after " + std::to_string(config_.max_transport_retries + 1) +
                       " attempts: " + last_error);
}

} // namespace socnet
