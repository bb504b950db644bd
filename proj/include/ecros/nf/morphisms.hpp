#pragma once

#include <optional>

#include "ecros/nf/trager.hpp"

namespace ecros {

// Field homomorphism determined by the image of the generator.
struct FieldHom {
  NFPtr from, to;
  NFElem gen_image;  // element of `to` with min poly = from->poly()

  NFElem operator()(const NFElem& x) const;
  bool is_identity() const;
  friend bool operator==(const FieldHom& a, const FieldHom& b) {
    return a.from == b.from && a.to == b.to && a.gen_image == b.gen_image;
  }
};

FieldHom identity_hom(const NFPtr& K);
FieldHom compose(const FieldHom& g, const FieldHom& f);  // g after f

// all automorphisms of K (size divides degree; = degree iff Galois); cached
const std::vector<FieldHom>& automorphisms(const NFPtr& K);
// all embeddings K -> L
std::vector<FieldHom> embeddings_into(const NFPtr& K, const NFPtr& L);
// order of an automorphism
int hom_order(const FieldHom& s);

// preimage of y under an embedding phi: K -> L (y must lie in phi(K))
std::optional<NFElem> hom_preimage(const FieldHom& phi, const NFElem& y);

// relative norm and trace over an embedded subfield, for Galois L/K only:
// product/sum over the subgroup of Aut(L) fixing phi(K)
std::vector<FieldHom> relative_galois_group(const FieldHom& phi);  // Gal(L/K)
NFElem relative_norm(const FieldHom& phi, const NFElem& x);        // in K
NFElem relative_trace(const FieldHom& phi, const NFElem& x);       // in K

// simple extension L = K[y]/(g) as an absolute field, g monic irreducible
// over K; `base` embeds K into L and `root` is the image of y
struct Extension {
  NFPtr L;
  FieldHom base;
  NFElem root;
};
Extension extend_by_poly(const NFPtr& K, const NFPoly& g);

// isomorphism test between absolute fields
bool fields_isomorphic(const NFPtr& A, const NFPtr& B);

// canonical small defining polynomial of the field (deterministic; used as a
// dedup key: isomorphic fields produce the same polynomial)
PolyZ canonical_poly(const NFPtr& K);

}  // namespace ecros
