// Copyright 2026 The qlll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlll/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qlll/constants.hpp"
#include "qlll/errors.hpp"

namespace qlll {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Minimal JSON walker that records the line on which the value at a given
// path starts. Only used to decorate error messages.
class PathScanner {
  public:
    PathScanner(std::string_view text, std::string_view target)
        : text_(text), target_(target) {}

    std::size_t run() {
        try {
            value("");
        } catch (const std::out_of_range &) {
        }
        return found_;
    }

  private:
    char peek() const {
        if (pos_ >= text_.size()) {
            throw std::out_of_range("end of input");
        }
        return text_[pos_];
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
            } else if (c != ' ' && c != '\t' && c != '\r') {
                break;
            }
            ++pos_;
        }
    }

    std::string string_token() {
        std::string out;
        ++pos_;
        while (peek() != '"') {
            if (text_[pos_] == '\\') {
                ++pos_;
            }
            out.push_back(peek());
            ++pos_;
        }
        ++pos_;
        return out;
    }

    void value(const std::string &path) {
        skip_ws();
        if (found_ == 0 && path == target_) {
            found_ = line_;
        }
        const char c = peek();
        if (c == '{') {
            ++pos_;
            skip_ws();
            if (peek() == '}') {
                ++pos_;
                return;
            }
            while (true) {
                skip_ws();
                const std::string key = string_token();
                skip_ws();
                ++pos_; // ':'
                value(path.empty() ? key : path + "." + key);
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                ++pos_; // '}'
                return;
            }
        }
        if (c == '[') {
            ++pos_;
            skip_ws();
            if (peek() == ']') {
                ++pos_;
                return;
            }
            for (std::size_t index = 0;; ++index) {
                value(path + "[" + std::to_string(index) + "]");
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                ++pos_; // ']'
                return;
            }
        }
        if (c == '"') {
            string_token();
            return;
        }
        while (pos_ < text_.size() &&
               std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                   std::string_view::npos) {
            ++pos_;
        }
    }

    std::string_view text_;
    std::string_view target_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t found_ = 0;
};

class Reader {
  public:
    explicit Reader(std::string_view source) : source_(source) {}

    [[noreturn]] void fail(const std::string &path,
                           const std::string &message) const {
        const std::size_t line =
            source_.empty() ? 0 : locate_json_path(source_, path);
        throw ParseError(message, line, path);
    }

    const json &field(const json &obj, const std::string &path,
                      const char *key) const {
        if (!obj.is_object()) {
            fail(path, "expected an object");
        }
        const auto it = obj.find(key);
        if (it == obj.end()) {
            fail(join(path, key), "missing field");
        }
        return *it;
    }

    std::uint64_t unsigned_value(const json &v, const std::string &path) const {
        if (!v.is_number_unsigned()) {
            fail(path, "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    double number(const json &v, const std::string &path) const {
        if (!v.is_number()) {
            fail(path, "expected a number");
        }
        return v.get<double>();
    }

    Complex complex(const json &v, const std::string &path) const {
        if (!v.is_array() || v.size() != 2) {
            fail(path, "expected a [re, im] pair");
        }
        return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
    }

    Matrix matrix(const json &v, const std::string &path) const {
        if (!v.is_array() || v.empty()) {
            fail(path, "expected a non-empty array of rows");
        }
        const auto rows = static_cast<Eigen::Index>(v.size());
        Matrix m(rows, rows);
        for (Eigen::Index i = 0; i < rows; ++i) {
            const std::string row_path = path + "[" + std::to_string(i) + "]";
            const json &row = v[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) {
                fail(row_path, "expected a row of " + std::to_string(rows) +
                                   " entries (matrix must be square)");
            }
            for (Eigen::Index j = 0; j < rows; ++j) {
                m(i, j) = complex(row[static_cast<std::size_t>(j)],
                                  row_path + "[" + std::to_string(j) + "]");
            }
        }
        return m;
    }

    static std::string join(const std::string &path, const char *key) {
        return path.empty() ? std::string(key) : path + "." + key;
    }

  private:
    std::string_view source_;
};

ordered_json complex_json(const Complex &c) {
    return ordered_json::array({c.real(), c.imag()});
}

ordered_json matrix_json(const Matrix &m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json forbidden_json(const DiagonalBody &body, std::size_t width) {
    ordered_json out = ordered_json::array();
    for (auto f : body.forbidden) {
        out.push_back(format_bits(f, width));
    }
    return out;
}

std::vector<std::uint32_t> read_forbidden(const Reader &reader, const json &v,
                                          const std::string &path,
                                          std::size_t width) {
    if (!v.is_array()) {
        reader.fail(path, "expected an array of bit-strings");
    }
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_string()) {
            reader.fail(item, "expected a bit-string");
        }
        const auto bits = v[i].get<std::string>();
        if (bits.size() != width) {
            reader.fail(item, "bit-string length " + std::to_string(bits.size()) +
                                  " does not match support size " +
                                  std::to_string(width));
        }
        try {
            out.push_back(parse_bits(bits));
        } catch (const Error &e) {
            reader.fail(item, e.what());
        }
    }
    return out;
}

} // namespace

std::size_t locate_json_path(std::string_view text, std::string_view path) {
    return PathScanner(text, path).run();
}

ordered_json instance_to_json(const Instance &instance) {
    ordered_json doc;
    doc["n"] = instance.num_qubits();
    ordered_json list = ordered_json::array();
    for (const auto &p : instance.projectors()) {
        ordered_json item;
        item["support"] = p.support();
        item["kind"] = std::string(to_string(p.kind()));
        const std::size_t width = p.support().size();
        if (const auto *d = std::get_if<DiagonalBody>(&p.body())) {
            item["forbidden"] = forbidden_json(*d, width);
        } else if (const auto *r = std::get_if<RotatedBody>(&p.body())) {
            item["forbidden"] = forbidden_json(r->inner, width);
            ordered_json rotations = ordered_json::array();
            for (const auto &u : r->rotations) {
                rotations.push_back(matrix_json(u));
            }
            item["rotations"] = std::move(rotations);
        } else {
            item["matrix"] = matrix_json(std::get<ExplicitBody>(p.body()).matrix);
        }
        list.push_back(std::move(item));
    }
    doc["projectors"] = std::move(list);
    ordered_json meta;
    if (instance.meta().seed) {
        meta["seed"] = *instance.meta().seed;
    } else {
        meta["seed"] = nullptr;
    }
    meta["generator"] = instance.meta().generator;
    doc["meta"] = std::move(meta);
    return doc;
}

Instance instance_from_json(const json &doc, std::string_view source_text) {
    const Reader reader(source_text);
    const std::uint64_t n = reader.unsigned_value(reader.field(doc, "", "n"), "n");
    if (n == 0) {
        reader.fail("n", "an instance needs at least one qubit");
    }
    const json &list = reader.field(doc, "", "projectors");
    if (!list.is_array()) {
        reader.fail("projectors", "expected an array");
    }

    std::vector<ProjectorSpec> projectors;
    projectors.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "projectors[" + std::to_string(i) + "]";
        const json &item = list[i];
        const json &support_json = reader.field(item, path, "support");
        const std::string support_path = path + ".support";
        if (!support_json.is_array()) {
            reader.fail(support_path, "expected an array of qubit indices");
        }
        Support support;
        for (std::size_t j = 0; j < support_json.size(); ++j) {
            const std::string qpath = support_path + "[" + std::to_string(j) + "]";
            const std::uint64_t q = reader.unsigned_value(support_json[j], qpath);
            if (q >= n) {
                reader.fail(qpath, "qubit index " + std::to_string(q) +
                                       " out of range for n = " +
                                       std::to_string(n));
            }
            support.push_back(static_cast<std::size_t>(q));
        }
        const json &kind_json = reader.field(item, path, "kind");
        if (!kind_json.is_string()) {
            reader.fail(path + ".kind", "expected a string");
        }
        const auto kind = kind_json.get<std::string>();
        const std::size_t width = support.size();

        try {
            if (kind == "diagonal") {
                projectors.push_back(ProjectorSpec::diagonal(
                    std::move(support),
                    read_forbidden(reader, reader.field(item, path, "forbidden"),
                                   path + ".forbidden", width)));
            } else if (kind == "rotated") {
                auto forbidden =
                    read_forbidden(reader, reader.field(item, path, "forbidden"),
                                   path + ".forbidden", width);
                const json &rot = reader.field(item, path, "rotations");
                if (!rot.is_array()) {
                    reader.fail(path + ".rotations", "expected an array");
                }
                std::vector<Matrix2> rotations;
                for (std::size_t j = 0; j < rot.size(); ++j) {
                    const std::string rpath =
                        path + ".rotations[" + std::to_string(j) + "]";
                    const Matrix u = reader.matrix(rot[j], rpath);
                    if (u.rows() != 2) {
                        reader.fail(rpath, "rotations must be 2x2");
                    }
                    rotations.push_back(u);
                }
                projectors.push_back(ProjectorSpec::rotated(
                    std::move(support), std::move(forbidden), std::move(rotations)));
            } else if (kind == "explicit") {
                projectors.push_back(ProjectorSpec::explicit_matrix(
                    std::move(support),
                    reader.matrix(reader.field(item, path, "matrix"),
                                  path + ".matrix")));
            } else {
                reader.fail(path + ".kind", "unknown projector kind '" + kind +
                                                "' (expected diagonal, rotated "
                                                "or explicit)");
            }
        } catch (const MalformedProjector &e) {
            reader.fail(path, e.what());
        }

        const auto &p = projectors.back();
        if (p.hermiticity_residual() > kOperatorTolerance ||
            p.idempotence_residual() > kOperatorTolerance ||
            std::abs(p.trace() - static_cast<double>(p.rank())) > kRankTolerance) {
            reader.fail(path, "not an orthogonal projector");
        }
    }

    InstanceMeta meta;
    if (const auto it = doc.find("meta"); it != doc.end() && !it->is_null()) {
        if (!it->is_object()) {
            reader.fail("meta", "expected an object");
        }
        if (const auto s = it->find("seed"); s != it->end() && !s->is_null()) {
            meta.seed = reader.unsigned_value(*s, "meta.seed");
        }
        if (const auto g = it->find("generator"); g != it->end()) {
            if (!g->is_string()) {
                reader.fail("meta.generator", "expected a string");
            }
            meta.generator = g->get<std::string>();
        }
    }
    try {
        return Instance::create(static_cast<std::size_t>(n), std::move(projectors),
                                std::move(meta));
    } catch (const MalformedProjector &e) {
        reader.fail("projectors", e.what());
    }
}

std::string serialize_instance(const Instance &instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        std::size_t line = 1;
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < end; ++i) {
            if (text[i] == '\n') {
                ++line;
            }
        }
        throw ParseError(e.what(), line, "");
    }
    return instance_from_json(doc, text);
}

void save_instance(const Instance &instance, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << serialize_instance(instance);
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

Instance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

} // namespace qlll
