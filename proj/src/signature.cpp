#include "irf/signature.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "irf/errors.hpp"

namespace irf {

Signature::Signature(std::initializer_list<int> parts) : Signature(std::vector<int>(parts)) {}

Signature::Signature(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw InvalidParameter("signature parts must be nonnegative");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw InvalidParameter("signature parts must be weakly decreasing");
    }
}

int Signature::size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
}

int Signature::multiplicity(int i) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

int Signature::count_below(int i) const {
    return static_cast<int>(
        std::count_if(parts_.begin(), parts_.end(), [i](int p) { return p < i; }));
}

std::vector<int> Signature::occupation(std::size_t ncols) const {
    std::vector<int> occ(ncols, 0);
    for (int p : parts_) {
        if (static_cast<std::size_t>(p) >= ncols)
            throw InvalidParameter("signature " + str() + " does not fit in " +
                                   std::to_string(ncols) + " columns");
        ++occ[p];
    }
    return occ;
}

Signature Signature::from_occupation(const std::vector<int>& occ, std::size_t first_column) {
    std::vector<int> parts;
    for (std::size_t j = occ.size(); j-- > 0;)
        for (int r = 0; r < occ[j]; ++r) parts.push_back(static_cast<int>(j + first_column));
    return Signature(std::move(parts));
}

std::string Signature::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
    os << ")";
    return os.str();
}

bool interlaces(const Signature& big, const Signature& small) {
    if (big.length() != small.length() && big.length() != small.length() + 1) return false;
    for (std::size_t i = 0; i < small.length(); ++i) {
        if (big[i] < small[i]) return false;
        if (i + 1 < big.length() && small[i] < big[i + 1]) return false;
    }
    return true;
}

std::vector<Signature> signatures_of_length(std::size_t length, int lo, int hi) {
    std::vector<Signature> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int top) {
        if (cur.size() == length) {
            out.emplace_back(cur);
            return;
        }
        for (int x = lo; x <= top; ++x) {
            cur.push_back(x);
            rec(x);
            cur.pop_back();
        }
    };
    if (hi >= lo || length == 0) rec(hi);
    return out;
}

std::vector<Signature> interlacing_from(const Signature& nu, int lo, int hi) {
    std::vector<Signature> out;
    const std::size_t N = nu.length();
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == N + 1) {
            out.emplace_back(cur);
            return;
        }
        const int top = i == 0 ? hi : nu[i - 1];
        const int bottom = std::max(lo, i < N ? nu[i] : 0);
        for (int x = bottom; x <= top; ++x) {
            cur.push_back(x);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace irf
