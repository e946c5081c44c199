#pragma once

#include <utility>
#include <vector>

#include "solenoid/covers.hpp"

namespace solenoid {

// A 2-cell: the closed walk of `word` starting at coset `base`.
struct Face {
  int base;
  Word word;
};

class CoverComplex {
 public:
  // Relator lifts (closed) or boundary orbits of c_i^-1 (punctured), each
  // rotated to start at its least corner.  Checks the surface condition.
  explicit CoverComplex(const CoverDescription& cover);

  const CoverDescription& cover() const { return *cover_; }
  int vertex_count() const { return cover_->degree(); }
  int edge_count() const { return cover_->edge_count(); }
  const std::vector<Face>& faces() const { return faces_; }
  // The faces containing each edge positively and negatively.
  int positive_face(int edge) const { return pos_[static_cast<std::size_t>(edge)]; }
  int negative_face(int edge) const { return neg_[static_cast<std::size_t>(edge)]; }

  // Edge chain of the walk of w from `start`; the walk need not close.
  IntVector walk_chain(int start, const Word& w) const;
  IntMatrix boundary1() const;  // vertices x edges
  IntMatrix boundary2() const;  // edges x faces

 private:
  const CoverDescription* cover_;
  std::vector<Face> faces_;
  std::vector<int> pos_, neg_;
};

using SparseCochain = std::vector<std::pair<int, long long>>;  // (edge, value)

struct HomologyBasis {
  int rank = 0;
  std::vector<int> cotree_edges;   // z_j is the Schreier loop through cotree_edges[j]
  std::vector<IntVector> cycles;   // edge chains
  std::vector<SparseCochain> cocycles;
  // Transposed cocycles: per edge, the (basis index, value) pairs.
  std::vector<std::vector<std::pair<int, long long>>> by_edge;

  IntVector evaluate(const IntVector& chain) const;
};

// SNF of the boundary maps certifies H_1 free of rank 2g_K (throws
// std::logic_error on torsion); the basis is built by tree-cotree duality.
HomologyBasis homology_basis(const CoverComplex& cx);

// Rebuilds cycles and the transposed index from stored cotree edges and cocycles.
HomologyBasis basis_from_parts(const CoverComplex& cx, std::vector<int> cotree, std::vector<SparseCochain> cocycles);

struct IntersectionForm {
  IntMatrix cup;     // cup(phi_i, phi_j) over the faces
  IntMatrix matrix;  // <z_i, z_j> = -(cup)^-1
};

// Throws std::logic_error when the cup matrix fails antisymmetry.
IntMatrix cup_matrix(const CoverComplex& cx, const HomologyBasis& basis);
IntersectionForm intersection_form(const CoverComplex& cx, const HomologyBasis& basis);

// Coordinates of the closed walk of w from `start` (throws InputError when
// the walk does not close).
IntVector cycle_class(const Word& w, const CoverComplex& cx, const HomologyBasis& basis, int start = 0);

// Action of the deck element 0 . x on cycle coordinates, one per generator.
std::vector<IntMatrix> deck_matrices(const CoverComplex& cx, const HomologyBasis& basis);

// Chain translated by deck element j.
IntVector translate_chain(const CoverDescription& cover, const IntVector& chain, int j);

// Class of an edge cycle in H_1(S_K; Z/modulus) of the unfilled cover:
// Schreier coordinates for n >= 1, cocycle coordinates for closed surfaces.
IntVector unfilled_coordinates(const CoverComplex& cx, const HomologyBasis& basis,
                               const IntVector& chain, long long modulus);
IntVector subgroup_homology_image(const Word& w, const CoverComplex& cx, const HomologyBasis& basis,
                                  long long modulus);
// Matrix of deck element j on the module above (columns are images of basis vectors).
IntMatrix unfilled_deck_action(const CoverComplex& cx, const HomologyBasis& basis, int j, long long modulus);

// Everything derived from one cover.
struct CoverHomology {
  CoverDescription cover;
  CoverComplex complex;
  HomologyBasis basis;
  IntersectionForm form;

  explicit CoverHomology(CoverDescription c);
  CoverHomology(CoverDescription c, std::vector<int> cotree, std::vector<SparseCochain> cocycles,
                IntersectionForm f);
  CoverHomology(const CoverHomology&) = delete;
  CoverHomology& operator=(const CoverHomology&) = delete;
};

}  // namespace solenoid
