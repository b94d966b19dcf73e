#include "sumsetlab/certificate.hpp"

#include <fstream>
#include <sstream>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

std::uint64_t fnv1a64(const std::string& data, std::uint64_t h) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

void Certificate::add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
}

void Certificate::add(const std::string& key, std::int64_t value) {
    lines_.emplace_back(key, std::to_string(value));
}

const std::string& Certificate::get(const std::string& key) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return v;
    throw Error(ErrorCode::SchemaMismatch, "certificate is missing '" + key + "'");
}

std::string Certificate::getOr(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return v;
    return fallback;
}

std::vector<std::string> Certificate::getAll(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : lines_)
        if (k == key) out.push_back(v);
    return out;
}

bool Certificate::has(const std::string& key) const {
    for (const auto& [k, v] : lines_)
        if (k == key) return true;
    return false;
}

void Certificate::write(std::ostream& out) const {
    out << kSchemaLine << "\n";
    for (const auto& [k, v] : lines_)
        out << k << ' ' << v << "\n";
    out << "end certificate\n";
}

Certificate Certificate::parse(std::istream& in, const std::string& src) {
    std::string line;
    if (!std::getline(in, line) || line != kSchemaLine)
        throw Error(ErrorCode::SchemaMismatch, src + ": unsupported certificate schema");
    Certificate c;
    bool ended = false;
    while (std::getline(in, line)) {
        if (line == "end certificate") { ended = true; break; }
        auto sp = line.find(' ');
        if (sp == std::string::npos)
            throw Error(ErrorCode::SchemaMismatch, src + ": malformed line '" + line + "'");
        c.lines_.emplace_back(line.substr(0, sp), line.substr(sp + 1));
    }
    if (!ended) throw Error(ErrorCode::SchemaMismatch, src + ": missing end marker");
    return c;
}

Certificate Certificate::parseFile(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot open certificate " + path);
    return parse(f, path);
}

std::string joinInts(const std::vector<std::int64_t>& vs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(vs[i]);
    }
    return out;
}

std::vector<std::int64_t> splitInts(const std::string& s, char sep) {
    std::vector<std::int64_t> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) {
        if (cur.empty()) continue;
        try {
            out.push_back(std::stoll(cur));
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "bad integer '" + cur + "'");
        }
    }
    return out;
}

} // namespace sumsetlab
