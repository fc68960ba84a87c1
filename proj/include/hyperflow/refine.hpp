#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hyperflow/hyper.hpp"

namespace hyperflow {

/// A transport table certifying an entropy or secure refinement between two
/// hypers. Rows are the source entries, columns the target entries; mass
/// moves only between entries with equal visible value. For every target
/// column j and hidden value h,
///
///   sum_i transport(i,j) * source_i(h)  +  slack_j(h)  =  target_w_j * target_j(h)
///
/// with slack identically empty when the witness certifies pure entropy
/// refinement. Nonempty slack is exactly the mass added by the intermediate
/// termination-refinement step of a secure refinement.
struct Witness {
  struct Entry {
    Value vis;
    Inner inner;
    Rat wgt;
  };

  std::vector<Entry> source;
  std::vector<Entry> target;
  std::map<std::pair<size_t, size_t>, Rat> transport;
  std::map<size_t, Dist> slack;  // target column -> added subdistribution

  bool pure_entropy() const { return slack.empty(); }

  /// Re-verifies every invariant exactly; throws on any violation.
  void validate() const;

  static std::vector<Entry> entries_of(const Hyper& h);
  static Witness identity(const Hyper& h);
};

/// Decides entropy refinement between two hypers (the coarser one's entries
/// are weighted merges of the finer one's) by exact linear feasibility over
/// the transport variables, one system per visible class. Returns a
/// validated equality-column witness, or nullopt.
std::optional<Witness> entropy_refines(const Hyper& s, const Hyper& i);

/// Secure refinement: termination refinement followed by entropy
/// refinement. Same system with the per-column equalities relaxed to <=;
/// the column slack is reconstructed into the returned witness.
std::optional<Witness> secure_refines(const Hyper& s, const Hyper& i);

/// Sum-of-squares gauge: sum over entries of weight * sum_h inner(h)^2.
/// Strictly decreases under proper entropy refinement, so it decides
/// antisymmetry questions without floating point.
Rat gauge(const Hyper& h);

/// Gauge of a single distribution (the hyper gauge of its point hyper).
Rat gauge(const Dist& d);

/// Transitivity construction: from witnesses for A ~ B and B ~ C builds the
/// witness for A ~ C with transport(i,k) = sum_j w1(i,j) * w2(j,k) / b_j.
/// Requires w1's target to equal w2's source; both must be pure entropy
/// witnesses. The result is validated before being returned.
Witness compose_witness(const Witness& w1, const Witness& w2);

}  // namespace hyperflow
