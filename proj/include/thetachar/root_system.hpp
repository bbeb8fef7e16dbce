#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetachar/rational.hpp"

namespace thetachar {

/// One root, kept both in simple-root coordinates and in fundamental-weight
/// coordinates. The bilinear form is normalized so long roots have length
/// squared 2 (the highest root is always long).
struct Root {
    std::vector<long> alpha; // coefficients over the simple roots
    WVec fw;
    long height = 0;
    Rat length2;
};

struct WeylElement {
    std::vector<std::vector<long>> mat; // action on fw coordinates, row form
    int sign = 1;                       // determinant
    std::vector<int> word;              // reduced-ish generator sequence
};

/// Finite root system of a simple Lie algebra, Bourbaki numbering.
/// Supported: A1..A7, B2..B5, C2..C5, D4..D5, E6..E8, F4, G2.
class RootSystem {
public:
    explicit RootSystem(const std::string& type);

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    const std::vector<std::vector<long>>& cartan() const { return cartan_; }
    /// d[i] = |alpha_i|^2 / 2 (1 on long roots, 1/2 or 1/3 on short ones)
    const std::vector<Rat>& d() const { return d_; }

    /// invariant form on fundamental-weight coordinates
    Rat inner(const WVec& a, const WVec& b) const;
    Rat norm2(const WVec& a) const { return inner(a, a); }

    WVec simple_root(int i) const;          // row i of the Cartan matrix
    WVec fundamental_weight(int i) const;   // e_i
    WVec rho() const { return WVec(rank_, Rat(1)); }
    WVec rho_check() const;                 // sum of fundamental coweights
    WVec coroot(const WVec& root_fw) const; // alpha / d_alpha

    const std::vector<Root>& positive_roots() const { return positive_; }
    const Root& highest_root() const { return positive_.back(); }
    bool is_positive_root(const WVec& v) const;
    bool is_root(const WVec& v) const;

    long dual_coxeter() const { return dual_coxeter_; }
    long dim_g() const { return rank_ + 2 * static_cast<long>(positive_.size()); }
    long lacing() const { return lacing_; } // r-check: 1 / min d_i

    /// simple-root coordinates of a vector given in fw coordinates
    WVec alpha_coords(const WVec& v) const;
    Rat height(const WVec& v) const; // (v | rho_check) = sum of alpha coords
    std::vector<Rat> height_covector() const;

    /// lattice membership in fw coordinates
    bool in_root_lattice(const WVec& v) const;       // Q
    bool in_coroot_lattice(const WVec& v) const;     // Q-check
    bool in_weight_lattice(const WVec& v) const;     // P: integer coords
    bool in_coweight_lattice(const WVec& v) const;   // P-check = Q*: d_i c_i integral
    std::vector<WVec> coroot_basis() const;          // alpha_i / d_i
    std::vector<WVec> coweight_basis() const;        // omega_i / d_i

    /// all coroot-lattice points gamma with |gamma fw coords| <= box[i]
    std::vector<WVec> coroot_box(const std::vector<Rat>& box) const;

    WVec reflect(int i, const WVec& v) const;
    WVec apply(const WeylElement& w, const WVec& v) const;
    /// full Weyl group via the orbit of rho; throws GroupTooLarge past cap
    /// (default one million elements)
    const std::vector<WeylElement>& weyl_elements() const;
    const std::vector<WeylElement>& weyl_elements(std::size_t cap) const;
    std::size_t weyl_order() const { return weyl_elements().size(); }

private:
    void build_roots();
    WVec solve_transposed(const WVec& rhs) const; // x with A^T x = rhs

    std::string name_;
    int rank_ = 0;
    std::vector<std::vector<long>> cartan_;
    std::vector<Rat> d_;
    std::vector<std::vector<Rat>> gram_; // (omega_i | omega_j)
    std::vector<std::vector<Rat>> cartan_inv_;
    std::vector<Root> positive_;
    std::map<std::vector<Rat>, int> root_index_; // fw coords -> index, positive only
    long dual_coxeter_ = 0;
    long lacing_ = 1;
    mutable std::vector<WeylElement> weyl_; // filled on first use
};

} // namespace thetachar
