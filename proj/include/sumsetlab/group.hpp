#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sumsetlab/error.hpp"

namespace sumsetlab {

// A finite group as an explicit multiplication table. Immutable after
// validation; element indices are canonical per construction so repeated
// runs produce identical tables.
class GroupTable {
public:
    using Elem = int;

    GroupTable(std::string name, int order, std::vector<std::uint16_t> mul);

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    Elem identity() const { return identity_; }
    Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); } // g x g^-1

    int elementOrder(Elem a) const;
    int exponent() const; // lcm of element orders
    bool isAbelian() const;

    // Closure of a generating set under multiplication, sorted.
    std::vector<Elem> subgroupClosure(const std::vector<Elem>& gens) const;
    // Derived subgroup [G,G], sorted.
    std::vector<Elem> derivedSubgroup() const;

private:
    void validate();

    std::string name_;
    int order_;
    std::vector<std::uint16_t> mul_;
    std::vector<std::uint16_t> inv_;
    Elem identity_ = 0;
};

// Specs: zn:<n>, dihedral:<n>, sym:<n> (n<=8), alt:<n> (n<=8),
// psl2:<q> (prime power q<=13), cayley:<path>.
GroupTable buildGroup(const std::string& spec);

// Cayley CSV: "order,<n>" then n rows of n comma-separated indices,
// identity at index 0. Import and export are mutually inverse bit-exact.
GroupTable readCayleyCsv(std::istream& in, const std::string& sourceName);
GroupTable readCayleyCsvFile(const std::string& path);
void writeCayleyCsv(const GroupTable& g, std::ostream& out);

// Conjugacy classes plus class-multiplication constants
// (K_i K_j = sum_k a_ijk K_k in the group algebra). Constant matrices are
// produced on demand; abelian groups have |G| classes and a dense cube
// would be wasteful.
class ConjugacyData {
public:
    explicit ConjugacyData(const GroupTable& g);

    const GroupTable& group() const { return *g_; }
    int classCount() const { return static_cast<int>(reps_.size()); }
    int classOf(GroupTable::Elem x) const { return classOf_[x]; }
    std::int64_t classSize(int c) const { return sizes_[c]; }
    GroupTable::Elem representative(int c) const { return reps_[c]; }
    int inverseClass(int c) const { return invClass_[c]; }
    const std::vector<std::int64_t>& classSizes() const { return sizes_; }

    // M[k*r + j] = a_ijk: the matrix of multiplication by K_i in the
    // class-sum basis (column j, row k).
    std::vector<std::int64_t> classConstantMatrix(int i) const;

private:
    const GroupTable* g_;
    std::vector<int> classOf_;
    std::vector<GroupTable::Elem> reps_;
    std::vector<std::int64_t> sizes_;
    std::vector<int> invClass_;
};

} // namespace sumsetlab
