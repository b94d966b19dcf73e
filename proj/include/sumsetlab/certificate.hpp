#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab {

inline constexpr const char* kToolVersion = "sumsetlab/0.1.0";
inline constexpr const char* kSchemaLine = "schema sumsetlab-certificate/v1";

// FNV-1a over bytes; certificates digest the canonical flag line plus the
// contents of every referenced input file.
std::uint64_t fnv1a64(const std::string& data, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

// A certificate is an ordered list of "key value" lines. Repeated keys are
// meaningful (one line per part, witness, request, ...). Values never
// contain newlines; rationals print as num/den.
class Certificate {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::int64_t value);

    const std::string& get(const std::string& key) const;          // throws SchemaMismatch when absent
    std::string getOr(const std::string& key, const std::string& fallback) const;
    std::vector<std::string> getAll(const std::string& key) const; // in order
    bool has(const std::string& key) const;

    void write(std::ostream& out) const;
    static Certificate parse(std::istream& in, const std::string& sourceName);
    static Certificate parseFile(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> lines_;
};

std::string joinInts(const std::vector<std::int64_t>& vs, char sep = ' ');
std::vector<std::int64_t> splitInts(const std::string& s, char sep = ' ');

} // namespace sumsetlab
