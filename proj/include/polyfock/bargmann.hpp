#pragma once

#include <string>

#include "polyfock/ekm_table.hpp"
#include "polyfock/gabor.hpp"
#include "polyfock/grid.hpp"

namespace polyfock {

/// raw_F stores F(z); bargmann_weighted stores exp(i pi x omega - pi |z|^2 / 2) F(z).
enum class NormTag { raw_F, bargmann_weighted };

const char* norm_tag_name(NormTag tag);

/// Convention line echoed into every emitted field file.
std::string convention_note();

class FockField {
 public:
  FockField(GridField field, NormTag tag) : field_(std::move(field)), tag_(tag) {}

  const GridField& field() const { return field_; }
  const PhaseGrid& grid() const { return field_.grid(); }
  const Eigen::MatrixXcd& values() const { return field_.values(); }
  NormTag tag() const { return tag_; }

  /// Same function under the other normalization (pointwise multiplication).
  FockField as(NormTag tag) const;

 private:
  GridField field_;
  NormTag tag_;
};

/// Validity mask shipped with finite-difference outputs (true = usable node).
using NodeMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct MaskedFockField {
  FockField field;
  NodeMask valid;
};

enum class BargmannRoute {
  stft,        ///< V_phi f(x, -omega) unweighted; the normative path
  quadrature,  ///< direct Riemann sum of the integral kernel
};

/// Bf(z) = 2^{1/4} int f(t) exp(2 pi t z - pi t^2 - pi z^2 / 2) dt, tagged raw_F.
FockField bargmann_transform(const Signal& f, const PhaseGrid& phase,
                             BargmannRoute route = BargmannRoute::stft);

/// e_m(z) = (pi^m / m!)^{1/2} z^m.
FockField monomial_basis(int m, const PhaseGrid& phase);

/// B^n f(z) = exp(-i pi x omega + pi |z|^2 / 2) V_{h_n} f(x, -omega), tagged raw_F.
FockField true_poly_bargmann(const Signal& f, int n, const PhaseGrid& phase);

/// B^n f from (pi^n n!)^{-1/2} sum_k C(n,k) (-pi conj z)^k F^{(n-k)}(z), F = Bf, with
/// F^{(j)} from fourth-order central differences. n > 4 raises CapabilityError.
MaskedFockField true_poly_bargmann_derivative_route(const Signal& f, int n, const PhaseGrid& phase);

/// sum_k B^k f_k over the channels of f.
FockField poly_bargmann(const VectorSignal& f, const PhaseGrid& phase);

/// e_{k,m} from the frozen coefficient table; CapabilityError outside it.
FockField basis_ekm(int k, int m, const PhaseGrid& phase, const EkmTable& table = default_ekm_table());

/// exp(-pi |z|^2 / 2) e_{k,m}(z) for any k, m, evaluated term by term in log space
/// so that large m neither overflows nor underflows.
cplx ekm_weighted(int k, int m, cplx z);

struct ShiftedFockField {
  FockField field;
  bool outside = false;  ///< some shifted argument left the grid; those nodes hold 0
};

/// beta_{z0} F(zeta) = exp(i pi x0 omega0 - pi |z0|^2 / 2) exp(pi conj(z0) zeta) F(zeta - z0),
/// with F(zeta - z0) by bicubic Lagrange interpolation (error O(cell^4 |F^{(4)}|)).
ShiftedFockField beta_shift(const FockField& F, cplx z0);

/// The Fock-side image of M_omega T_x: B(M_omega T_x f) = exp(2 pi i x omega) beta_{x - i omega} Bf.
ShiftedFockField intertwining_shift(const FockField& F, TFShift s);

struct ReproducingValue {
  cplx value;
  bool warning = false;  ///< z within 4 units of the grid edge: kernel mass is truncated
};

/// int F(w) conj(w)^j exp(pi z conj(w)) exp(-pi |w|^2) dw = pi^{-j} F^{(j)}(z).
ReproducingValue reproducing_eval(const FockField& F, cplx z, int derivative_order);

/// p-fold d/dconj(z) = (d/dx + i d/domega) / 2 by fourth-order central differences.
MaskedFockField dbar_power(const FockField& F, int p);

/// sum_{m <= max_m} <F, e_{k,m}> e_{k,m}.
FockField project_true_component(const FockField& F, int k, int max_m,
                                 const EkmTable& table = default_ekm_table());

/// Gaussian-weighted phase quadrature of F conj(G), tag-independent.
cplx fock_inner_product(const FockField& F, const FockField& G);
double fock_norm(const FockField& F);

/// Gaussian-weighted norm restricted to nodes with mask true and |z| <= radius.
double fock_norm_on(const FockField& F, const NodeMask& mask, double radius);

/// Largest |F - G| over nodes with |z| <= radius (both taken raw).
double max_abs_diff_on_disk(const FockField& F, const FockField& G, double radius);

/// CSV `x,omega,re,im` with the convention and norm_tag preamble.
std::string fock_field_to_csv(const FockField& F);

}  // namespace polyfock
