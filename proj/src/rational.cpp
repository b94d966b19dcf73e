#include "sumsetlab/rational.hpp"

namespace sumsetlab {

Rational parseRational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            std::int64_t n = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Rational(n);
        }
        std::size_t usedN = 0, usedD = 0;
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        std::int64_t n = std::stoll(ns, &usedN);
        std::int64_t d = std::stoll(ds, &usedD);
        if (usedN != ns.size() || usedD != ds.size()) throw std::invalid_argument(s);
        return Rational(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, "bad rational '" + s + "'");
    }
}

} // namespace sumsetlab
