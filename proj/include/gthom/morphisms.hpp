#pragma once

#include <optional>
#include <vector>

#include "gthom/plmap.hpp"
#include "gthom/words.hpp"

namespace gthom {

// Index map behind the base-change monomorphism: j = i + k(m-1) with
// 0 <= i <= m-2 goes to i + k(n-1).
long zeta(int m, int n, long j);

// Letter-wise monomorphism (F_{m,inf}, t_{m-1}) -> (F_{n,inf}, t_{n-1}):
// g_{m,j} -> g_{n, zeta(j)}, t_{m-1} -> t_{n-1}.
Word tau(int m, int n, const Word& w);

enum class LambdaKind {
  Lambda,       // F_{n,0} -> F_{m,0}: g_{n,i} -> g_{m,i}^d
  LambdaPrime,  // F_{m,0} -> F_{n,0}: g_{m,i} -> g_{n,d*i}
  FnEmbed       // F_n -> F_{2,0}: t_1 -> g_{2,0}, g_{n,i} -> g_{2,i+1}^{n-1}
};

Word lambda_map(LambdaKind kind, int m, int n, const Word& w);

/// Endomorphism/automorphism of (F_{n,inf}, t_{n-1}) given by the images of
/// g_0 .. g_{p-1}; the image of g_{i+kp} is the step-p shift of images[i].
/// The period p divides n-1 (p < n-1 occurs for symmetric-lift outputs,
/// which commute with the smaller translation).
class GenAuto {
public:
  GenAuto(int n, int period, std::vector<Word> images);
  static GenAuto identity(int n);

  int base() const { return base_; }
  int period() const { return period_; }
  const std::vector<Word>& images() const { return images_; }
  bool verified() const { return verified_; }

  Word image_of_g(long j) const;
  // Re-expand to a multiple of the current period.
  GenAuto with_period(int new_period) const;

  friend bool verify(GenAuto& a);
  friend bool verify_serial(GenAuto& a);

private:
  int base_;
  int period_;
  std::vector<Word> images_;
  bool verified_ = false;
};

// Extensional relation check over the finite truncation determined by the
// image supports; sets the verified flag. Relation instances are independent
// and are checked in parallel when OpenMP is enabled.
bool verify(GenAuto& a);
// Serial reference implementation (identical result).
bool verify_serial(GenAuto& a);

Word apply(const GenAuto& a, const Word& w, bool allow_unverified = false);

// Left-to-right: apply(compose_autos(a, b), w) == apply(b, apply(a, w)).
GenAuto compose_autos(const GenAuto& a, const GenAuto& b);
GenAuto auto_pow(const GenAuto& a, long k);  // k >= 0
bool check_inverse(const GenAuto& a, const GenAuto& b);

// Standard lift to base n: images of g_0..g_{m-2} through tau, the new
// generators g_{m-1}..g_{n-2} fixed; output period n-1.
GenAuto theta_lift(const GenAuto& a, int n);

// Symmetric lift: same images through tau but extended with the source
// period m-1; requires (m-1) | (n-1).
GenAuto lambda_lift(const GenAuto& a, int n);

// j-step rotation: generator images shift by j going in and by r = jh coming
// out, where r is read off the leftmost break of the image of g_{j mod n-1}.
// r must be an integer.
GenAuto rotate(const GenAuto& a, long j);

// Permutation of {0..n-2} fixing 0: i -> phi(leftmost break of g_i's image).
std::vector<long> pi_of_auto(const GenAuto& a);

// Automorphism realized by conjugation by a period-(n-1) normalizer fixing 0.
GenAuto auto_from_periodic(const PeriodicPLMap& h);

// Word form of the conjugate of g_j by the periodic extension of W:
// W^{-1} g_j W W_1 with W_1 the step-(n-1) shift of W.
Word conj_by_periodic_word(int n, long j, const Word& W);

enum class InnerStatus { Inner, InnerAtList, Fail };

struct InnerResult {
  InnerStatus status;
  std::vector<bool> at;  // per generator slot 0..n-2
};

// witnesses: one word (diagonal test) or n-1 words (per-slot test); each must
// have support in [0, n-1].
InnerResult inner_check(const GenAuto& a, const std::vector<Word>& witnesses);

// True iff the image of g_i has no break strictly inside the image of the
// active interval [i, i+1] (endpoints read off the leftmost breaks of the
// images of g_i and g_{i+1}).
bool is_unbent_at(const GenAuto& a, long i);

/// Verified fixtures of the order-(n-2) outer automorphism construction.
struct TorsionExample {
  GenAuto alpha4;  // base 4
  GenAuto beta;    // lift of alpha4 to base n
  GenAuto gamma;   // 1-step rotation of beta
  Word P;          // g_{n-2} g_0^{-1}; gamma^{n-2} is conjugation by its
                   // periodic extension
};

TorsionExample torsion_example(int n);

}  // namespace gthom
