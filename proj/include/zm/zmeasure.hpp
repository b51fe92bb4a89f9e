#pragma once

#include "zm/partitions.hpp"
#include "zm/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace zm {

enum class Series { Principal, Complementary, Degenerate, Invalid };

std::string to_string(Series s);

/// Classifies a complex parameter pair; equality tests use an absolute tolerance.
Series classify(const cplx& z, const cplx& zp, double tol = 1e-12);
/// Exact classification of a real rational pair.
Series classify(const Rational& z, const Rational& zp);

/// Parameters (z, z') with t = z z'. F is Rational (exact, complementary series) or cplx.
template <class F>
struct ZParams {
    F z;
    F zp;
    F t;
    Series series;
};

/// Builds validated parameters; throws DegenerateParameters for integral z or z', DomainError when invalid.
ZParams<Rational> make_params(const Rational& z, const Rational& zp);
ZParams<cplx> make_params(const cplx& z, const cplx& zp);
/// Complex realisation of exact parameters.
ZParams<cplx> to_complex(const ZParams<Rational>& p);
/// The pair (-z, -z'), which is valid whenever (z, z') is.
template <class F> ZParams<F> reflect(const ZParams<F>& p);

enum class WeightMethod { boxes, rows, frobenius };

/// The z-measure weight M_{zz'}(lambda).
template <class F> F weight(const Partition& lambda, const ZParams<F>& params, WeightMethod method = WeightMethod::boxes);
/// Row formula with an explicit number of rows l >= length(lambda).
template <class F> F weight_rows(const Partition& lambda, const ZParams<F>& params, int l);
/// Weights of every partition of n, in the order of partitions_of(n).
template <class F> std::vector<std::pair<Partition, F>> level_weights(int n, const ZParams<F>& params);

/// Matrix entry m_{pq} of the determinantal form.
template <class F> F m_pq(int p, int q, const ZParams<F>& params);
/// det[m_{p_i q_j}] / (t)_n, which equals M(lambda) / dim(lambda).
template <class F> F det_weight(const Partition& lambda, const ZParams<F>& params);

/// Outcome of an identity check: exact text of the worst violation in rational mode.
struct VerificationReport {
    bool pass = true;
    double max_violation = 0.0;
    std::string max_violation_text = "0";
    std::string worst;
    long checks = 0;
    std::string to_json() const;
};

/// Coherence of levels n and n+1 plus normalisation of levels n and n+1.
template <class F> VerificationReport verify_coherence(int n, const ZParams<F>& params, double tol = 1e-10);
/// The relations m_{p+1,q} + m_{p,q+1} - (p+q+1) m_{pq} = m_{p0} m_{0q} and m_{00} = t.
template <class F> VerificationReport verify_hook_recurrence(int p_max, int q_max, const ZParams<F>& params, double tol = 1e-10);
/// weight(transpose(lambda); z, z') == weight(lambda; -z, -z').
template <class F> bool transpose_symmetry_check(const Partition& lambda, const ZParams<F>& params, double tol = 1e-10);

/// Records |a - b| into the report; exact fields require equality, inexact ones a relative gap <= tol.
template <class F>
void record_check(VerificationReport& r, const F& a, const F& b, const std::string& where, double tol);

/// Relative deviation |a - b| / max(1, |a|, |b|), zero-tolerance equality for exact fields.
template <class F> double relative_gap(const F& a, const F& b);

}  // namespace zm
