#pragma once

#include "kabel/automaton.hpp"
#include "kabel/blockcode.hpp"
#include "kabel/linrep.hpp"
#include "kabel/logic.hpp"
#include "kabel/numeration.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kabel {

/// Progress messages from long pipelines; may be empty.
using Progress = std::function<void(const std::string&)>;

struct Method1Options {
    std::string system = "x";   // numeration name, also the artifact suffix
    SemigroupOptions caps;
    bool complexity = true;      // continue past the Δ DFAO
    std::size_t k_max = 6;       // per-k DFAOs for k = 1..k_max
    std::string checkpoint_dir;  // reuse/persist artifacts when non-empty
    Progress progress;
};

/// Artifacts of the balance-function method. Relations are also registered in
/// `env` under the names feq_<sys>, occ_<sys>, same<sys>, abeqex<sys>,
/// abeq<sys>, abfirst<sys>, and the Δ DFAO as the word Dequi<sys>.
struct Method1Result {
    Environment env;
    std::string system;
    Automaton feq, occ;
    std::size_t occ_dimension = 0;
    Automaton delta;        // tracks (i, j1, j2, k, n)
    std::int64_t bound = 0; // max |Δ|
    Automaton same, abexeq, abeq, abfirst;
    LinRep complexity2d;    // tracks (k, n), reduced
    std::map<std::size_t, Automaton> per_k;

    std::string delta_name() const { return "Dequi" + system; }
    std::string feq_name() const { return "feq_" + system; }
};

/// Throws CapExceeded when the Δ representation is not bounded within caps.
Method1Result method1(const Substitution& s, Letter a, const Method1Options& opt = {});

/// DFAO of ρ^K over one track, from abfirst with k fixed to K.
Automaton complexity_for_k(Method1Result& r, std::size_t K, const SemigroupOptions& caps = {});

struct CertifyResult {
    bool ok = true;
    std::string failed;                  // name of the first failing assertion
    std::vector<std::string> variables;  // witness variables (sorted)
    std::vector<std::uint64_t> witness;  // their values
};

/// Inductive check that `delta` over (i, j1, j2, k, n) in `numeration`
/// computes the balance function of the word behind the relation
/// `feq_name`: values at n = 0, then each step n → n+1.
CertifyResult certify_delta(const Automaton& delta, const std::string& numeration, const std::string& feq_name,
                            Environment& env);

/// States reached by some input whose every track is a valid representation
/// in `numeration`. Only outputs on these states are observable.
std::vector<std::uint32_t> observable_states(const Automaton& dfao, const Numeration& numeration);

struct Method2Options {
    std::string system = "x";
    SemigroupOptions caps;
    Progress progress;
};

struct Method2Result {
    std::size_t k = 1;
    BlockSubstitution block;
    Numeration block_numeration;       // N_{τ_k}, named "<sys>b<k>"
    std::vector<Automaton> parikh_syncs; // one per block letter
    Automaton abeq;                    // (i, j, n) in N_{τ_k}
    Automaton complexity;              // ρ^k in N_{τ_k}
    Automaton converter;               // (N_τ, N_{τ_k})
    Automaton converted;               // ρ^k in N_τ
};

/// k-abelian complexity through the sliding-block code. Throws
/// Tau2NotUltimatelyPisot for k ≥ 2 when τ_2 is not ultimately Pisot.
Method2Result method2_kabelian(const Substitution& s, Letter a, std::size_t k, const Method2Options& opt = {});

/// Abelian complexity DFAO in the Dumont–Thomas numeration of τ.
Automaton method2_abelian(const Substitution& s, Letter a, const Method2Options& opt = {});

/// Re-expresses a one-track DFAO of `from` in `to`. Inputs that are invalid
/// in `to` output `invalid`.
Automaton convert_dfao(const Automaton& dfao, const Numeration& from, const Numeration& to,
                       std::int64_t invalid = 0);

/// Parikh-collinear case: α = Σ_a |τ(a)|_a when every letter's image has the
/// same Parikh direction, nullopt otherwise.
std::optional<std::uint64_t> parikh_collinear_alpha(const Substitution& s);

struct BalancednessReport {
    bool exact = true;                 // false: lower bounds from a finite prefix
    std::int64_t bound = 0;            // max over all k
    std::vector<std::int64_t> tight;   // C_k for k = 0..k_max
    std::optional<std::size_t> tight_from; // least K with C_k = bound for all k ≥ K
    /// Exact mode: the k < 1024 with C_k < bound, and whether there are
    /// infinitely many such k.
    std::vector<std::size_t> below_bound;
    bool below_bound_infinite = false;
    /// Per C: totally (k,C)-unbalanced flags for k = 0..k_max, and the least K
    /// with "unbalanced ⇔ k ≥ K" when that holds for all k.
    std::map<std::int64_t, std::vector<bool>> totally_unbalanced;
    std::map<std::int64_t, std::optional<std::size_t>> unbalanced_from;
    std::map<std::int64_t, bool> never_unbalanced;
};

BalancednessReport balancedness_report(Method1Result& r, std::size_t k_max);
/// Witness mode: brute force on a prefix, lower bounds only.
BalancednessReport balancedness_report(const Word& prefix, std::size_t k_max, std::size_t n_max);

/// (Δ_k, Δ_n): DFAOs over (k, n) of ρ^{k+1}(n) − ρ^k(n) and ρ^k(n+1) − ρ^k(n).
std::pair<Automaton, Automaton> difference_dfaos(Method1Result& r, const SemigroupOptions& caps = {});

/// Values of a DFAO over (k, n) for k < rows, n < cols.
std::vector<std::vector<std::int64_t>> grid_values(const Automaton& dfao, const Numeration& n, std::size_t rows,
                                                   std::size_t cols);

} // namespace kabel
