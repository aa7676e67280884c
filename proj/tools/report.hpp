// Copyright 2026 The entangle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// JSON reports for the command line tool.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <entangle/errors.hpp>
#include <entangle/io.hpp>

namespace entangle::cli {

using json = nlohmann::json;

/// Round to 16 significant digits so printed output is stable.
inline double round16(double x) {
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16g", x);
    return std::strtod(buf, nullptr);
}

inline json rounded(const json &j) {
    if (j.is_number_float()) {
        return round16(j.get<double>());
    }
    if (j.is_array() || j.is_object()) {
        json out = j;
        for (auto &item : out) {
            item = rounded(item);
        }
        return out;
    }
    return j;
}

inline std::string sha256_hex(const std::string &data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xF]);
    }
    return out;
}

/// Reads a whole file; unreadable files count as malformed input.
inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(what + ": " + e.what());
    }
}

struct Entry {
    std::string name;
    json value;
    double tol;
    std::optional<bool> pass; // set for assertions only
};

class Report {
  public:
    explicit Report(std::string command) : command_(std::move(command)) {}

    /// Each input (file contents or canonical option text) feeds the digest.
    void add_input(const std::string &bytes) {
        digest_input_ += std::to_string(bytes.size());
        digest_input_.push_back(':');
        digest_input_ += bytes;
    }

    void value(std::string name, json v, double tol) {
        entries_.push_back({std::move(name), std::move(v), tol, std::nullopt});
    }

    bool check(std::string name, json v, double tol, bool pass) {
        entries_.push_back({std::move(name), std::move(v), tol, pass});
        return pass;
    }

    [[nodiscard]] bool ok() const {
        for (const auto &e : entries_) {
            if (e.pass && !*e.pass) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] json to_json() const {
        json results = json::array();
        for (const auto &e : entries_) {
            json item = {{"name", e.name}, {"value", rounded(e.value)}, {"tol", e.tol}};
            if (e.pass) {
                item["pass"] = *e.pass;
            }
            results.push_back(std::move(item));
        }
        return {{"command", command_},
                {"inputs_digest", sha256_hex(digest_input_)},
                {"results", std::move(results)},
                {"ok", ok()}};
    }

  private:
    std::string command_;
    std::string digest_input_;
    std::vector<Entry> entries_;
};

} // namespace entangle::cli
