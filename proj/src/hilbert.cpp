#include "otoclock/hilbert.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace otoclock {

namespace {

std::atomic<std::uint64_t> g_next_uid{1};

// Column c of a single-site operator as a list of (row, amplitude) pairs.
// All supported kinds map a basis ket to at most one ket, but the walk below
// copes with general columns anyway.
using LocalColumn = std::vector<std::pair<int, cxd>>;

LocalColumn local_column(SiteKind kind, int dim, LocalKind op, int c) {
  const cxd I(0.0, 1.0);
  auto bad = [&]() -> LocalColumn {
    throw std::invalid_argument("local operator kind invalid for site kind");
  };
  switch (op) {
    case LocalKind::SigmaX:
      if (kind != SiteKind::Qubit) return bad();
      return {{1 - c, 1.0}};
    case LocalKind::SigmaY:
      // |0> -> i|1>, |1> -> -i|0>
      if (kind != SiteKind::Qubit) return bad();
      return c == 0 ? LocalColumn{{1, I}} : LocalColumn{{0, -I}};
    case LocalKind::SigmaZ:
      if (kind != SiteKind::Qubit) return bad();
      return {{c, c == 0 ? 1.0 : -1.0}};
    case LocalKind::SigmaPlus:
      // raises |1> (down) to |0> (up)
      if (kind != SiteKind::Qubit) return bad();
      return c == 1 ? LocalColumn{{0, 1.0}} : LocalColumn{};
    case LocalKind::SigmaMinus:
      if (kind != SiteKind::Qubit) return bad();
      return c == 0 ? LocalColumn{{1, 1.0}} : LocalColumn{};
    case LocalKind::A:
      if (kind == SiteKind::Qubit) return bad();
      return c > 0 ? LocalColumn{{c - 1, std::sqrt(double(c))}} : LocalColumn{};
    case LocalKind::Adag:
      if (kind == SiteKind::Qubit) return bad();
      return c < dim - 1 ? LocalColumn{{c + 1, std::sqrt(double(c + 1))}} : LocalColumn{};
    case LocalKind::N:
      if (kind == SiteKind::Qubit) return bad();
      return c > 0 ? LocalColumn{{c, double(c)}} : LocalColumn{};
    case LocalKind::Proj0:
      if (dim != 2) return bad();
      return c == 0 ? LocalColumn{{0, 1.0}} : LocalColumn{};
    case LocalKind::Proj1:
      if (dim != 2) return bad();
      return c == 1 ? LocalColumn{{1, 1.0}} : LocalColumn{};
    case LocalKind::TauX:
      if (kind != SiteKind::Clock) return bad();
      return {{1 - c, 1.0}};
    case LocalKind::TauY:
      if (kind != SiteKind::Clock) return bad();
      return c == 0 ? LocalColumn{{1, I}} : LocalColumn{{0, -I}};
    case LocalKind::TauZ:
      // tau_z = 1 - 2 a^dag a on the photon register
      if (kind != SiteKind::Clock) return bad();
      return {{c, c == 0 ? 1.0 : -1.0}};
  }
  return bad();
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<SiteSpec> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) throw std::invalid_argument("HilbertSpace: no sites");
  dim_ = 1;
  for (int k = 0; k < n_sites(); ++k) {
    auto& s = sites_[k];
    if (s.kind == SiteKind::Boson) {
      if (s.n_max < 1) throw std::invalid_argument("HilbertSpace: boson cutoff must be >= 1");
    } else {
      s.n_max = 1;
    }
    if (s.kind == SiteKind::Clock) {
      if (clock_ >= 0) throw std::invalid_argument("HilbertSpace: more than one clock site");
      clock_ = k;
    }
    dim_ *= site_dim(k);
    if (dim_ > (std::int64_t(1) << 26))
      throw std::invalid_argument("HilbertSpace: dimension too large");
  }
  strides_.assign(n_sites(), 1);
  for (int k = n_sites() - 2; k >= 0; --k) strides_[k] = strides_[k + 1] * site_dim(k + 1);
}

int HilbertSpace::site_dim(int k) const {
  const auto& s = sites_.at(k);
  return s.kind == SiteKind::Boson ? s.n_max + 1 : 2;
}

std::vector<int> HilbertSpace::sites_of_kind(SiteKind kind) const {
  std::vector<int> out;
  for (int k = 0; k < n_sites(); ++k)
    if (sites_[k].kind == kind) out.push_back(k);
  return out;
}

std::int64_t HilbertSpace::index_of(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != n_sites())
    throw std::invalid_argument("index_of: wrong tuple length");
  std::int64_t idx = 0;
  for (int k = 0; k < n_sites(); ++k) {
    if (occ[k] < 0 || occ[k] >= site_dim(k))
      throw std::invalid_argument("index_of: occupation out of range");
    idx += occ[k] * strides_[k];
  }
  return idx;
}

std::vector<int> HilbertSpace::occupation_of(std::int64_t index) const {
  if (index < 0 || index >= dim_) throw std::invalid_argument("occupation_of: index out of range");
  std::vector<int> occ(n_sites());
  for (int k = 0; k < n_sites(); ++k) {
    occ[k] = static_cast<int>(index / strides_[k]);
    index %= strides_[k];
  }
  return occ;
}

bool HilbertSpace::same_layout(const HilbertSpace& other) const {
  if (n_sites() != other.n_sites()) return false;
  for (int k = 0; k < n_sites(); ++k)
    if (sites_[k].kind != other.sites_[k].kind || site_dim(k) != other.site_dim(k)) return false;
  return true;
}

std::shared_ptr<const HilbertSpace> HilbertSpace::make(std::vector<SiteSpec> sites) {
  return std::shared_ptr<const HilbertSpace>(new HilbertSpace(std::move(sites)));
}

SpacePtr make_space(std::vector<SiteSpec> sites) { return HilbertSpace::make(std::move(sites)); }

StateVector basis_state(const SpacePtr& space, const std::vector<int>& occ) {
  StateVector s{space, Vec::Zero(space->dim())};
  s.amp[space->index_of(occ)] = 1.0;
  return s;
}

Operator::Operator(SpacePtr space, SpMatR mat, bool hermitian_hint)
    : space_(std::move(space)),
      mat_(std::move(mat)),
      hermitian_(hermitian_hint),
      uid_(g_next_uid.fetch_add(1)) {
  if (!space_) throw std::invalid_argument("Operator: null space");
  if (mat_.rows() != space_->dim() || mat_.cols() != space_->dim())
    throw std::invalid_argument("Operator: matrix does not match space dimension");
}

Operator Operator::adjoint() const {
  SpMatR adj = SpMatR(mat_.adjoint());
  return Operator(space_, std::move(adj), hermitian_);
}

Operator Operator::scaled(cxd factor) const {
  SpMatR m = mat_ * factor;
  bool herm = hermitian_ && factor.imag() == 0.0;
  return Operator(space_, std::move(m), herm);
}

Operator Operator::plus(const Operator& other) const {
  if (!space_->same_layout(*other.space_))
    throw std::invalid_argument("Operator::plus: space mismatch");
  SpMatR m = mat_ + other.mat_;
  return Operator(space_, std::move(m), hermitian_ && other.hermitian_);
}

double hermiticity_defect(const Operator& op) {
  SpMatR d = SpMatR(op.sparse() - SpMatR(op.sparse().adjoint()));
  double worst = 0.0;
  for (int r = 0; r < d.outerSize(); ++r)
    for (SpMatR::InnerIterator it(d, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

Operator compose(const SpacePtr& space, const std::vector<ProductTerm>& terms,
                 bool hermitian_hint) {
  if (!space) throw std::invalid_argument("compose: null space");
  const std::int64_t dim = space->dim();
  std::vector<Eigen::Triplet<cxd>> trips;
  trips.reserve(static_cast<size_t>(dim) * std::max<size_t>(terms.size(), 1));

  for (const auto& term : terms) {
    for (const auto& [site, kind] : term.factors) {
      if (site < 0 || site >= space->n_sites())
        throw std::invalid_argument("compose: site index out of range");
      // validate the kind against the site once, on column 0
      local_column(space->site(site).kind, space->site_dim(site), kind, 0);
    }
  }

  std::vector<int> occ;
  // walk every basis column through every term; factors hit the ket
  // right-to-left, branching on multi-entry local columns
  struct Partial {
    std::vector<int> occ;
    cxd amp;
  };
  std::vector<Partial> frontier, next;
  for (std::int64_t c = 0; c < dim; ++c) {
    occ = space->occupation_of(c);
    for (const auto& term : terms) {
      frontier.assign(1, {occ, term.coeff});
      for (auto f = term.factors.rbegin(); f != term.factors.rend() && !frontier.empty(); ++f) {
        const auto [site, kind] = *f;
        next.clear();
        for (const auto& p : frontier) {
          for (const auto& [row, amp] :
               local_column(space->site(site).kind, space->site_dim(site), kind, p.occ[site])) {
            Partial q = p;
            q.occ[site] = row;
            q.amp *= amp;
            next.push_back(std::move(q));
          }
        }
        frontier.swap(next);
      }
      for (const auto& p : frontier)
        if (p.amp != 0.0) trips.emplace_back(space->index_of(p.occ), c, p.amp);
    }
  }

  SpMatR mat(dim, dim);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();
  Operator op(space, std::move(mat), hermitian_hint);
  if (hermitian_hint && hermiticity_defect(op) > 1e-12)
    throw std::invalid_argument("compose: operator claimed hermitian but is not");
  return op;
}

Operator local_operator(const SpacePtr& space, int site, LocalKind kind) {
  return compose(space, {{1.0, {{site, kind}}}});
}

Operator identity_op(const SpacePtr& space) {
  SpMatR m(space->dim(), space->dim());
  m.setIdentity();
  return Operator(space, std::move(m), true);
}

StateVector apply(const Operator& op, const StateVector& state) {
  if (!op.space()->same_layout(*state.space))
    throw std::invalid_argument("apply: operator and state live on different spaces");
  StateVector out{state.space, Vec()};
  kernels::sparse_matvec(op.sparse(), state.amp, out.amp);
  return out;
}

cxd inner(const StateVector& lhs, const StateVector& rhs) {
  if (!lhs.space->same_layout(*rhs.space))
    throw std::invalid_argument("inner: states live on different spaces");
  return kernels::inner(lhs.amp, rhs.amp);
}

cxd expectation(const Operator& op, const StateVector& state) {
  return inner(state, apply(op, state));
}

Operator projector_total_sz(const SpacePtr& space, const std::vector<int>& qubit_sites,
                            int value) {
  for (int q : qubit_sites)
    if (q < 0 || q >= space->n_sites() || space->site(q).kind != SiteKind::Qubit)
      throw std::invalid_argument("projector_total_sz: not a qubit site");
  const int nq = static_cast<int>(qubit_sites.size());
  if (value < -nq || value > nq || (value + nq) % 2 != 0)
    throw std::invalid_argument("projector_total_sz: unattainable total sigma_z");
  std::vector<Eigen::Triplet<cxd>> trips;
  for (std::int64_t c = 0; c < space->dim(); ++c) {
    const auto occ = space->occupation_of(c);
    int sz = 0;
    for (int q : qubit_sites) sz += 1 - 2 * occ[q];
    if (sz == value) trips.emplace_back(c, c, 1.0);
  }
  SpMatR mat(space->dim(), space->dim());
  mat.setFromTriplets(trips.begin(), trips.end());
  return Operator(space, std::move(mat), true);
}

SpacePtr space_without_clock(const SpacePtr& space) {
  if (space->clock_site_index() < 0)
    throw std::invalid_argument("space_without_clock: space has no clock site");
  std::vector<SiteSpec> sites;
  for (int k = 0; k < space->n_sites(); ++k)
    if (k != space->clock_site_index()) sites.push_back(space->site(k));
  return make_space(std::move(sites));
}

Operator clock_sector_block(const Operator& op, int n_a) {
  const auto& space = op.space();
  const int clk = space->clock_site_index();
  if (clk < 0) throw std::invalid_argument("clock_sector_block: no clock site");
  if (n_a != 0 && n_a != 1) throw std::invalid_argument("clock_sector_block: sector must be 0 or 1");

  auto reduced = space_without_clock(space);
  // global index -> reduced index for states in the sector, -1 elsewhere
  std::vector<std::int64_t> to_reduced(space->dim(), -1);
  std::int64_t r = 0;
  for (std::int64_t i = 0; i < space->dim(); ++i) {
    if (space->occupation_of(i)[clk] == n_a) to_reduced[i] = r++;
  }

  std::vector<Eigen::Triplet<cxd>> trips;
  const auto& m = op.sparse();
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SpMatR::InnerIterator it(m, row); it; ++it) {
      const bool row_in = to_reduced[it.row()] >= 0;
      const bool col_in = to_reduced[it.col()] >= 0;
      if (row_in != col_in && std::abs(it.value()) > 0.0)
        throw std::invalid_argument("clock_sector_block: operator mixes clock sectors");
      if (row_in && col_in) trips.emplace_back(to_reduced[it.row()], to_reduced[it.col()], it.value());
    }
  }
  SpMatR mat(reduced->dim(), reduced->dim());
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();
  return Operator(reduced, std::move(mat), op.hermitian());
}

}  // namespace otoclock
