#include "ontocell/automaton.hpp"
#include "ontocell/kernels.hpp"
#include "ontocell/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ontocell {

LatticeSpec::LatticeSpec(std::vector<int> state_counts, double dt) : delta_t(dt) {
    if (state_counts.empty()) throw std::invalid_argument("LatticeSpec: no cells");
    cells.reserve(state_counts.size());
    for (int n : state_counts) cells.emplace_back(n, dt);
    dimension();  // validates the bound
}

int LatticeSpec::dimension() const {
    long long d = 1;
    for (const auto& c : cells) {
        d *= c.n_states;
        if (d > 4096) throw std::invalid_argument("LatticeSpec: product dimension exceeds 4096");
    }
    return static_cast<int>(d);
}

int LatticeSpec::encode(const std::vector<int>& ks) const {
    if (ks.size() != cells.size()) throw std::invalid_argument("encode: wrong cell count");
    int idx = 0;
    for (size_t i = cells.size(); i-- > 0;) {
        const int n = cells[i].n_states;
        const int k = ks[i];
        if (k < 0 || k >= n) throw std::out_of_range("encode: state out of range");
        idx = idx * n + k;  // cell 0 ends up fastest-varying
    }
    return idx;
}

std::vector<int> LatticeSpec::decode(int index) const {
    std::vector<int> ks(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
        const int n = cells[i].n_states;
        ks[i] = index % n;
        index /= n;
    }
    return ks;
}

void validate_term(const LatticeSpec& lattice, const ExchangeTerm& term) {
    const int ncells = static_cast<int>(lattice.cells.size());
    if (term.target_cell < 0 || term.target_cell >= ncells)
        throw std::invalid_argument("ExchangeTerm: target cell out of range");
    const int n = lattice.cells[static_cast<size_t>(term.target_cell)].n_states;
    if (term.k1 < 0 || term.k2 >= n || term.k1 >= term.k2)
        throw std::invalid_argument("ExchangeTerm: need 0 <= k1 < k2 < N(target)");
    if (!(term.strength > 0.0) || term.strength > kPi)
        throw std::invalid_argument("ExchangeTerm: strength must lie in (0, pi]");
    if (term.sign != 1 && term.sign != -1)
        throw std::invalid_argument("ExchangeTerm: sign must be +-1");
    if (term.condition) {
        const auto& c = *term.condition;
        if (c.sieve_cell == term.target_cell)
            throw std::invalid_argument("ExchangeTerm: condition may not reference the target cell");
        if (c.sieve_cell < 0 || c.sieve_cell >= ncells)
            throw std::invalid_argument("ExchangeTerm: sieve cell out of range");
        if (c.values.empty()) throw std::invalid_argument("ExchangeTerm: empty condition set");
        const int ns = lattice.cells[static_cast<size_t>(c.sieve_cell)].n_states;
        for (int v : c.values)
            if (v < 0 || v >= ns) throw std::invalid_argument("ExchangeTerm: condition value out of range");
    }
}

ComplexMatrix embed_on_cell(const LatticeSpec& lattice, int cell, const ComplexMatrix& op) {
    if (cell < 0 || cell >= static_cast<int>(lattice.cells.size()))
        throw std::invalid_argument("embed_on_cell: cell out of range");
    if (op.dim != lattice.cells[static_cast<size_t>(cell)].n_states)
        throw std::invalid_argument("embed_on_cell: operator does not fit the cell");
    // encode() makes cell 0 the fastest digit and kron(A, B) runs B fastest,
    // so the factors are assembled in descending cell order.
    ComplexMatrix term;
    for (int j = static_cast<int>(lattice.cells.size()) - 1; j >= 0; --j) {
        const ComplexMatrix f = (j == cell)
            ? op
            : ComplexMatrix::identity(lattice.cells[static_cast<size_t>(j)].n_states);
        term = (term.dim == 0) ? f : kern::kron(term, f);
    }
    term.basis = Basis::product;
    return term;
}

ComplexMatrix build_H0(const LatticeSpec& lattice) {
    lattice.dimension();  // validates the bound
    ComplexMatrix acc;
    for (size_t c = 0; c < lattice.cells.size(); ++c) {
        const ComplexMatrix term = embed_on_cell(
            lattice, static_cast<int>(c), hamiltonian(lattice.cells[c], Basis::ontological));
        acc = (c == 0) ? term : kern::add(acc, term);
    }
    acc.basis = Basis::product;
    acc.flag_hermitian = true;
    return acc;
}

namespace {

bool condition_holds(const ExchangeTerm& term, const std::vector<int>& ks) {
    if (!term.condition) return true;
    const int v = ks[static_cast<size_t>(term.condition->sieve_cell)];
    return std::find(term.condition->values.begin(), term.condition->values.end(), v) !=
           term.condition->values.end();
}

}  // namespace

ComplexMatrix exchange_hamiltonian(const LatticeSpec& lattice, const ExchangeTerm& term) {
    validate_term(lattice, term);
    const int dim = lattice.dimension();
    ComplexMatrix h(dim, Basis::product);
    const double half = 0.5 * term.sign * term.strength;
    // |psi><psi| has entries +1/2 at (k1,k1),(k2,k2) and -1/2 across, placed
    // on every basis pair that agrees elsewhere and passes the sieve.
    for (int idx = 0; idx < dim; ++idx) {
        std::vector<int> ks = lattice.decode(idx);
        if (ks[static_cast<size_t>(term.target_cell)] != term.k1) continue;
        if (!condition_holds(term, ks)) continue;
        std::vector<int> ks2 = ks;
        ks2[static_cast<size_t>(term.target_cell)] = term.k2;
        const int jdx = lattice.encode(ks2);
        h.at(idx, idx) = half;
        h.at(jdx, jdx) = half;
        h.at(idx, jdx) = -half;
        h.at(jdx, idx) = -half;
    }
    h.flag_hermitian = true;
    return h;
}

ClassicalConfig classical_step(const LatticeSpec& lattice, const std::vector<ExchangeTerm>& terms,
                               const ClassicalConfig& cfg) {
    if (cfg.k.size() != lattice.cells.size())
        throw std::invalid_argument("classical_step: wrong config size");
    std::vector<int> ks = cfg.k;
    for (size_t i = 0; i < ks.size(); ++i)
        if (ks[i] < 0 || ks[i] >= lattice.cells[i].n_states)
            throw std::out_of_range("classical_step: config out of range");
    for (const auto& term : terms) {
        validate_term(lattice, term);
        if (term.strength != kPi)
            throw std::invalid_argument("classical_step: strengths must be exactly pi");
        int& k = ks[static_cast<size_t>(term.target_cell)];
        if ((k == term.k1 || k == term.k2) && condition_holds(term, ks))
            k = (k == term.k1) ? term.k2 : term.k1;
    }
    for (size_t i = 0; i < ks.size(); ++i) ks[i] = (ks[i] + 1) % lattice.cells[i].n_states;
    return ClassicalConfig{ks};
}

ClassicalConfig classical_step_inverse(const LatticeSpec& lattice,
                                       const std::vector<ExchangeTerm>& terms,
                                       const ClassicalConfig& cfg) {
    std::vector<int> ks = cfg.k;
    for (size_t i = 0; i < ks.size(); ++i) {
        const int n = lattice.cells[i].n_states;
        ks[i] = (ks[i] + n - 1) % n;
    }
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& term = *it;
        if (term.strength != kPi)
            throw std::invalid_argument("classical_step_inverse: strengths must be exactly pi");
        int& k = ks[static_cast<size_t>(term.target_cell)];
        if ((k == term.k1 || k == term.k2) && condition_holds(term, ks))
            k = (k == term.k1) ? term.k2 : term.k1;
    }
    return ClassicalConfig{ks};
}

namespace {

// Left-multiply m by exp(-i * sign * strength * Q) for the term's projector
// Q, using Q's row sparsity: only k1/k2 row pairs that pass the sieve move.
// exp(-i s Q) = I + (e^{-is} - 1) Q; strength pi gives the exact swap.
void apply_exchange_exponential(const LatticeSpec& lattice, const ExchangeTerm& term,
                                ComplexMatrix& m) {
    const int dim = m.dim;
    const double s = term.sign * term.strength;
    const cplx c = (term.strength == kPi)
        ? cplx(-2.0, 0.0)
        : cplx(std::cos(s) - 1.0, -std::sin(s));

    for (int idx = 0; idx < dim; ++idx) {
        std::vector<int> ks = lattice.decode(idx);
        if (ks[static_cast<size_t>(term.target_cell)] != term.k1) continue;
        if (!condition_holds(term, ks)) continue;
        std::vector<int> ks2 = ks;
        ks2[static_cast<size_t>(term.target_cell)] = term.k2;
        const int jdx = lattice.encode(ks2);
        cplx* row1 = &m.a[static_cast<size_t>(idx) * dim];
        cplx* row2 = &m.a[static_cast<size_t>(jdx) * dim];
        for (int j = 0; j < dim; ++j) {
            const cplx q = 0.5 * c * (row1[j] - row2[j]);
            row1[j] += q;
            row2[j] -= q;
        }
    }
}

}  // namespace

ComplexMatrix one_step_unitary(const LatticeSpec& lattice, const std::vector<ExchangeTerm>& terms,
                               StepMode mode) {
    for (const auto& t : terms) validate_term(lattice, t);
    const int dim = lattice.dimension();

    if (mode == StepMode::effective) {
        ComplexMatrix h = build_H0(lattice);
        for (const auto& t : terms) h = kern::add(h, exchange_hamiltonian(lattice, t));
        return mat_exp(h, cplx(0.0, -lattice.delta_t));
    }

    // Equivalence mode: terms in declared order, then the simultaneous shift,
    // matching classical_step (swap first, advance second).
    ComplexMatrix m = ComplexMatrix::identity(dim, Basis::product);
    for (const auto& t : terms) apply_exchange_exponential(lattice, t, m);

    ComplexMatrix u(dim, Basis::product);
    for (int idx = 0; idx < dim; ++idx) {
        std::vector<int> ks = lattice.decode(idx);
        for (size_t i = 0; i < ks.size(); ++i) ks[i] = (ks[i] + 1) % lattice.cells[i].n_states;
        const int target = lattice.encode(ks);
        std::copy(m.a.begin() + static_cast<long>(idx) * dim,
                  m.a.begin() + static_cast<long>(idx + 1) * dim,
                  u.a.begin() + static_cast<long>(target) * dim);
    }
    u.flag_unitary = true;
    return u;
}

std::vector<LocalityEntry> locality_report(const LatticeSpec& lattice,
                                           const std::vector<ExchangeTerm>& terms) {
    std::vector<ComplexMatrix> mats;
    mats.reserve(terms.size());
    for (const auto& t : terms) mats.push_back(exchange_hamiltonian(lattice, t));

    auto support = [](const ExchangeTerm& t) {
        std::set<int> s{t.target_cell};
        if (t.condition) s.insert(t.condition->sieve_cell);
        return s;
    };

    std::vector<LocalityEntry> out;
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = i + 1; j < terms.size(); ++j) {
            LocalityEntry e;
            e.term_a = static_cast<int>(i);
            e.term_b = static_cast<int>(j);
            e.commutator = commutator_norm(mats[i], mats[j]);
            const auto si = support(terms[i]);
            const auto sj = support(terms[j]);
            e.disjoint_support =
                std::none_of(si.begin(), si.end(), [&](int c) { return sj.count(c) > 0; });
            out.push_back(e);
        }
    }
    return out;
}

double low_energy_matrix_element(const LatticeSpec& lattice, const ExchangeTerm& term,
                                 double e_max) {
    validate_term(lattice, term);
    if (!term.condition)
        throw std::invalid_argument("low_energy_matrix_element: term must carry a sieve condition");
    const int sieve = term.condition->sieve_cell;
    const CellSpec& scell = lattice.cells[static_cast<size_t>(sieve)];
    const int ns = scell.n_states;
    const double w = scell.omega();

    int kept = 0;
    while (kept < ns && kept * w <= e_max) ++kept;
    if (kept == 0)
        throw std::invalid_argument("low_energy_matrix_element: empty truncated subspace");

    // Truncation projector on the sieve cell, in its ontological basis.
    const ComplexMatrix f = fourier_matrix(scell);
    ComplexMatrix plow(ns, Basis::ontological);
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b) {
            cplx s(0.0, 0.0);
            for (int n = 0; n < kept; ++n) s += f.at(a, n) * std::conj(f.at(b, n));
            plow.at(a, b) = s;
        }

    // Reference sieve state: the first condition value, projected low.
    const int r0 = term.condition->values.front();
    ComplexVector low(ns, Basis::ontological);
    double norm2 = 0.0;
    for (int a = 0; a < ns; ++a) {
        low[a] = plow.at(a, r0);
        norm2 += std::norm(low[a]);
    }
    if (norm2 < 1e-300)
        throw std::invalid_argument("low_energy_matrix_element: truncated reference state vanished");

    // <low x k1| H_int |low' x k2> factorises: the target part contributes
    // strength * <k1|psi><psi|k2> = -strength/2, the sieve part
    // <low| P_R |low> / ||low||^2.
    double sieve_part = 0.0;
    for (int v : term.condition->values) sieve_part += std::norm(low[v]);
    return term.strength * 0.5 * sieve_part / norm2;
}

EquivalenceReport verify_equivalence(const LatticeSpec& lattice,
                                     const std::vector<ExchangeTerm>& terms, double tol) {
    EquivalenceReport rep;
    const ComplexMatrix u = one_step_unitary(lattice, terms, StepMode::equivalence);
    const PermutationCheck pc = is_permutation(u, tol);
    rep.permutation_ok = pc.is_permutation;
    rep.max_residual = pc.max_residual;
    if (!pc.is_permutation) return rep;
    rep.matches_classical = true;
    const int dim = lattice.dimension();
    for (int idx = 0; idx < dim; ++idx) {
        const ClassicalConfig next =
            classical_step(lattice, terms, ClassicalConfig{lattice.decode(idx)});
        if (pc.map[static_cast<size_t>(idx)] != lattice.encode(next.k)) {
            rep.matches_classical = false;
            break;
        }
    }
    return rep;
}

RandomLattice random_lattice(std::mt19937_64& rng, const RandomLatticeParams& params) {
    RandomLattice out;
    std::uniform_int_distribution<int> cell_count(1, params.max_cells);
    const int ncells = cell_count(rng);
    std::vector<int> ns(static_cast<size_t>(ncells));
    std::uniform_int_distribution<int> states(1, params.max_states);
    for (auto& n : ns) n = states(rng);
    out.lattice = LatticeSpec(ns, 1.0);

    std::vector<int> swappable;
    for (int i = 0; i < ncells; ++i)
        if (ns[static_cast<size_t>(i)] >= 2) swappable.push_back(i);

    std::uniform_int_distribution<int> term_count(0, params.max_terms);
    const int nterms = swappable.empty() ? 0 : term_count(rng);
    for (int t = 0; t < nterms; ++t) {
        ExchangeTerm term;
        term.target_cell =
            swappable[std::uniform_int_distribution<size_t>(0, swappable.size() - 1)(rng)];
        const int n = ns[static_cast<size_t>(term.target_cell)];
        term.k1 = std::uniform_int_distribution<int>(0, n - 2)(rng);
        term.k2 = std::uniform_int_distribution<int>(term.k1 + 1, n - 1)(rng);
        term.strength = kPi;
        term.sign = (rng() & 1) ? +1 : -1;
        if (ncells >= 2 && (rng() % 100) < 60) {
            SieveCondition cond;
            do {
                cond.sieve_cell = std::uniform_int_distribution<int>(0, ncells - 1)(rng);
            } while (cond.sieve_cell == term.target_cell);
            const int nsv = ns[static_cast<size_t>(cond.sieve_cell)];
            const int count = std::uniform_int_distribution<int>(1, nsv)(rng);
            std::vector<int> all(static_cast<size_t>(nsv));
            for (int i = 0; i < nsv; ++i) all[static_cast<size_t>(i)] = i;
            std::shuffle(all.begin(), all.end(), rng);
            cond.values.assign(all.begin(), all.begin() + count);
            std::sort(cond.values.begin(), cond.values.end());
            term.condition = cond;
        }
        out.terms.push_back(term);
    }
    return out;
}

}  // namespace ontocell
