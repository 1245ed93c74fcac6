#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace irf {

// Weakly decreasing sequence of nonnegative integers.
class Signature {
public:
    Signature() = default;
    Signature(std::initializer_list<int> parts);
    explicit Signature(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int size() const;  // |mu|
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int smallest() const { return parts_.empty() ? 0 : parts_.back(); }

    // m_i and n_{<i}
    int multiplicity(int i) const;
    int count_below(int i) const;

    // Occupation numbers (m_0, ..., m_{ncols-1}); parts must be < ncols.
    std::vector<int> occupation(std::size_t ncols) const;
    static Signature from_occupation(const std::vector<int>& occ, std::size_t first_column = 0);

    std::string str() const;

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;

private:
    std::vector<int> parts_;
};

// big ≻ small: big_1 >= small_1 >= big_2 >= ... with length(big) - length(small) in {0, 1}.
bool interlaces(const Signature& big, const Signature& small);

// All signatures of the given length with parts in [lo, hi].
std::vector<Signature> signatures_of_length(std::size_t length, int lo, int hi);

// All kappa ≻ nu with length(nu)+1 parts, parts in [lo, hi].
std::vector<Signature> interlacing_from(const Signature& nu, int lo, int hi);

}  // namespace irf
