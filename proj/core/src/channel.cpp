#include "qdarwin/channel.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>

#include "qdarwin/errors.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/kernels.hpp"

namespace qdarwin {
namespace {

SubsystemLayout input_copy_layout(const SubsystemLayout& in) {
  std::vector<std::string> labels;
  for (const auto& l : in.labels()) labels.push_back("in:" + l);
  return {in.dims(), std::move(labels)};
}

// Columns are the vectors v_K = (1/sqrt(d_in)) Σ_i |i> ⊗ K|i>, so J = W W^dagger.
Matrix choi_factor(const KrausChannel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.in_dim());
  const auto dout = static_cast<Eigen::Index>(ch.out_dim());
  const double scale = 1.0 / std::sqrt(static_cast<double>(din));
  Matrix w(din * dout, static_cast<Eigen::Index>(ch.rank()));
  for (std::size_t k = 0; k < ch.rank(); ++k) {
    const Matrix& op = ch.operators()[k];
    for (Eigen::Index i = 0; i < din; ++i) {
      w.col(static_cast<Eigen::Index>(k)).segment(i * dout, dout) = scale * op.col(i);
    }
  }
  return w;
}

Matrix tp_sum(const KrausChannel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.in_dim());
  Matrix s = Matrix::Zero(din, din);
  for (const auto& k : ch.operators()) s += k.adjoint() * k;
  return s;
}

double tp_deviation(const KrausChannel& ch) {
  const auto din = static_cast<Eigen::Index>(ch.in_dim());
  return (tp_sum(ch) - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
}

// (v_a, w_a) spectral pairs with eigenvalue above the clamp.
std::vector<std::pair<double, Vector>> spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
  std::vector<std::pair<double, Vector>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > kEigenClamp) out.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i));
  }
  return out;
}

}  // namespace

// ChoiMatrix

ChoiMatrix::ChoiMatrix(DensityMatrix state, std::size_t in_dim, std::size_t out_dim, double tol)
    : state_(std::move(state)), in_dim_(in_dim), out_dim_(out_dim) {
  if (state_.dim() != in_dim * out_dim) throw DimensionError("choi: state dimension != in_dim * out_dim");
  const auto din = static_cast<Eigen::Index>(in_dim);
  const auto dout = static_cast<Eigen::Index>(out_dim);
  Matrix marginal = Matrix::Zero(din, din);
  for (Eigen::Index i = 0; i < din; ++i) {
    for (Eigen::Index j = 0; j < din; ++j) {
      marginal(i, j) = state_.entries().block(i * dout, j * dout, dout, dout).trace();
    }
  }
  const double dev =
      (marginal - Matrix::Identity(din, din) / static_cast<double>(in_dim)).cwiseAbs().maxCoeff();
  if (dev > tol) throw InvariantViolation("choi: input marginal differs from I/d_in by " + std::to_string(dev));
}

ChoiMatrix::ChoiMatrix(DensityMatrix state, std::size_t in_dim, std::size_t out_dim, Unchecked)
    : state_(std::move(state)), in_dim_(in_dim), out_dim_(out_dim) {}

IndexSet ChoiMatrix::input_part() const {
  // The input copy is the leading run of subsystems whose dimensions multiply to in_dim.
  IndexSet part;
  std::size_t d = 1;
  for (std::size_t i = 0; i < state_.layout().size() && d < in_dim_; ++i) {
    d *= state_.layout().dim(i);
    part.push_back(i);
  }
  return part;
}

// KrausChannel

struct KrausChannel::ChoiCache {
  std::once_flag once;
  std::optional<ChoiMatrix> choi;
};

KrausChannel::KrausChannel(std::vector<Matrix> operators, SubsystemLayout in_layout,
                           SubsystemLayout out_layout)
    : operators_(std::move(operators)),
      in_layout_(std::move(in_layout)),
      out_layout_(std::move(out_layout)),
      cache_(std::make_shared<ChoiCache>()) {
  if (operators_.empty()) throw DimensionError("kraus channel: no operators");
  const auto rows = static_cast<Eigen::Index>(out_layout_.total_dim());
  const auto cols = static_cast<Eigen::Index>(in_layout_.total_dim());
  for (const auto& k : operators_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionError("kraus channel: operator is " + std::to_string(k.rows()) + "x" +
                           std::to_string(k.cols()) + ", expected " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
  }
}

KrausChannel KrausChannel::from_operators(std::vector<Matrix> operators, SubsystemLayout in_layout,
                                          SubsystemLayout out_layout, double tol) {
  KrausChannel ch(std::move(operators), std::move(in_layout), std::move(out_layout));
  const double dev = tp_deviation(ch);
  if (dev > tol) throw InvariantViolation("kraus channel: not trace preserving (deviation " + std::to_string(dev) + ")");
  return ch;
}

KrausChannel KrausChannel::unchecked(std::vector<Matrix> operators, SubsystemLayout in_layout,
                                     SubsystemLayout out_layout) {
  return KrausChannel(std::move(operators), std::move(in_layout), std::move(out_layout));
}

const ChoiMatrix& KrausChannel::choi() const {
  std::call_once(cache_->once, [this] {
    const Matrix w = choi_factor(*this);
    Matrix j = w * w.adjoint();
    DensityMatrix state(hermitian_part(j), input_copy_layout(in_layout_).concat(out_layout_), qdarwin::unchecked);
    cache_->choi.emplace(std::move(state), in_dim(), out_dim(), qdarwin::unchecked);
  });
  return *cache_->choi;
}

std::string CptpReport::summary() const {
  std::ostringstream os;
  os << (passed() ? "pass" : "fail") << " (tp deviation " << tp_deviation << ", min Choi eigenvalue "
     << min_choi_eigenvalue << ", tol " << tol << ")";
  return os.str();
}

KrausChannel unitary_channel(const Matrix& u, SubsystemLayout layout, double tol) {
  SubsystemLayout out = layout;
  return unitary_channel(u, std::move(layout), std::move(out), tol);
}

KrausChannel unitary_channel(const Matrix& u, SubsystemLayout in_layout, SubsystemLayout out_layout,
                             double tol) {
  if (in_layout.total_dim() != out_layout.total_dim()) {
    throw DimensionError("unitary channel: input and output dimensions differ");
  }
  const double defect = unitarity_defect(u);
  if (defect > tol) throw InvariantViolation("unitary channel: matrix is not unitary (defect " + std::to_string(defect) + ")");
  return KrausChannel::from_operators({u}, std::move(in_layout), std::move(out_layout), tol);
}

KrausChannel isometry_channel(const Matrix& v, SubsystemLayout in_layout, SubsystemLayout out_layout,
                              double tol) {
  return KrausChannel::from_operators({v}, std::move(in_layout), std::move(out_layout), tol);
}

KrausChannel identity_channel(const SubsystemLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return KrausChannel::unchecked({Matrix::Identity(d, d)}, layout, layout);
}

KrausChannel fully_depolarizing_channel(const SubsystemLayout& layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  std::vector<Matrix> ops;
  if (d == 2) {
    const Complex i{0.0, 1.0};
    Matrix id = Matrix::Identity(2, 2), x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    for (const Matrix* p : {&id, &x, &y, &z}) ops.push_back(*p * 0.5);
  } else {
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        Matrix k = Matrix::Zero(d, d);
        k(a, b) = s;
        ops.push_back(std::move(k));
      }
    }
  }
  return KrausChannel::unchecked(std::move(ops), layout, layout);
}

KrausChannel constant_channel(const SubsystemLayout& in_layout, const DensityMatrix& tau) {
  const auto din = static_cast<Eigen::Index>(in_layout.total_dim());
  std::vector<Matrix> ops;
  for (const auto& [w, vec] : spectrum(tau.entries())) {
    for (Eigen::Index i = 0; i < din; ++i) {
      Matrix k = Matrix::Zero(static_cast<Eigen::Index>(tau.dim()), din);
      k.col(i) = std::sqrt(w) * vec;
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel::from_operators(std::move(ops), in_layout, tau.layout());
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.in_dim()) {
    throw DimensionError("apply: state dimension " + std::to_string(rho.dim()) + " vs channel input " +
                         std::to_string(ch.in_dim()));
  }
  const auto dout = static_cast<Eigen::Index>(ch.out_dim());
  Matrix out = Matrix::Zero(dout, dout);
  for (const auto& k : ch.operators()) out.noalias() += k * rho.entries() * k.adjoint();
  return {hermitian_part(out), ch.out_layout(), unchecked};
}

KrausChannel compose(const KrausChannel& f, const KrausChannel& g) {
  if (!g.out_layout().same_shape(f.in_layout())) {
    throw DimensionError("compose: output " + g.out_layout().describe() + " does not feed input " +
                         f.in_layout().describe());
  }
  std::vector<Matrix> ops;
  ops.reserve(f.rank() * g.rank());
  for (const auto& fk : f.operators()) {
    for (const auto& gk : g.operators()) ops.push_back(fk * gk);
  }
  return KrausChannel::unchecked(std::move(ops), g.in_layout(), f.out_layout());
}

KrausChannel tensor_channels(const KrausChannel& f, const KrausChannel& g) {
  std::vector<Matrix> ops;
  ops.reserve(f.rank() * g.rank());
  for (const auto& fk : f.operators()) {
    for (const auto& gk : g.operators()) ops.push_back(kron(fk, gk));
  }
  return KrausChannel::unchecked(std::move(ops), f.in_layout().concat(g.in_layout()),
                                 f.out_layout().concat(g.out_layout()));
}

CptpReport validate_cptp(const KrausChannel& ch, double tol) {
  CptpReport r;
  r.tol = tol;
  r.tp_deviation = tp_deviation(ch);
  // J = W W^dagger shares its nonzero spectrum with the Gram matrix W^dagger W.
  const Matrix w = choi_factor(ch);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(w.adjoint() * w), Eigen::EigenvaluesOnly);
  double min_eig = es.eigenvalues()(0);
  if (w.cols() < w.rows()) min_eig = std::min(min_eig, 0.0);
  r.min_choi_eigenvalue = min_eig;
  return r;
}

ChoiMatrix choi_of(const KrausChannel& ch) { return ch.choi(); }

KrausChannel kraus_from_choi(const ChoiMatrix& choi, SubsystemLayout in_layout, SubsystemLayout out_layout) {
  if (in_layout.total_dim() != choi.in_dim() || out_layout.total_dim() != choi.out_dim()) {
    throw DimensionError("kraus from choi: layouts do not match Choi dimensions");
  }
  const auto din = static_cast<Eigen::Index>(choi.in_dim());
  const auto dout = static_cast<Eigen::Index>(choi.out_dim());
  std::vector<Matrix> ops;
  for (const auto& [lambda, v] : spectrum(choi.state().entries())) {
    Matrix k(dout, din);
    const double s = std::sqrt(lambda * static_cast<double>(din));
    for (Eigen::Index i = 0; i < din; ++i) k.col(i) = s * v.segment(i * dout, dout);
    ops.push_back(std::move(k));
  }
  return KrausChannel::unchecked(std::move(ops), std::move(in_layout), std::move(out_layout));
}

KrausChannel compress(const KrausChannel& ch) {
  if (ch.rank() <= ch.in_dim() * ch.out_dim()) return ch;
  return kraus_from_choi(ch.choi(), ch.in_layout(), ch.out_layout());
}

KrausChannel partial_trace_channel(const SubsystemLayout& layout, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DimensionError("partial trace channel: keep set is empty");
  const IndexSet kept = normalize_indices(keep, layout.size());
  const IndexSet traced = layout.complement(kept);
  const SubsystemLayout kept_layout = layout.select(kept);
  const SubsystemLayout traced_layout = layout.select(traced);
  const auto dk = static_cast<Eigen::Index>(kept_layout.total_dim());
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  std::vector<Matrix> ops;
  ops.reserve(traced_layout.total_dim());
  std::vector<std::size_t> digits(layout.size());
  for (std::size_t t = 0; t < traced_layout.total_dim(); ++t) {
    const auto td = traced_layout.digits(t);
    Matrix k = Matrix::Zero(dk, d);
    for (std::size_t r = 0; r < kept_layout.total_dim(); ++r) {
      const auto rd = kept_layout.digits(r);
      for (std::size_t a = 0; a < kept.size(); ++a) digits[kept[a]] = rd[a];
      for (std::size_t a = 0; a < traced.size(); ++a) digits[traced[a]] = td[a];
      k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(layout.flat(digits))) = 1.0;
    }
    ops.push_back(std::move(k));
  }
  return KrausChannel::unchecked(std::move(ops), layout, kept_layout);
}

KrausChannel restrict_to(const KrausChannel& global, std::span<const std::size_t> keep) {
  return compress(compose(partial_trace_channel(global.out_layout(), keep), global));
}

KrausChannel restrict_to_fragment(const KrausChannel& global, std::size_t fragment) {
  if (fragment >= global.out_layout().size()) {
    throw DimensionError("restrict: fragment index " + std::to_string(fragment) + " out of range for output " +
                         global.out_layout().describe());
  }
  const std::size_t keep[] = {fragment};
  return restrict_to(global, keep);
}

// Measure and prepare

MeasureAndPrepareSpec::MeasureAndPrepareSpec(Povm povm, std::vector<DensityMatrix> prepared,
                                             std::string fragment_label)
    : povm_(std::move(povm)), prepared_(std::move(prepared)), fragment_label_(std::move(fragment_label)) {
  if (prepared_.size() != povm_.size()) {
    throw InvariantViolation("measure-and-prepare: " + std::to_string(povm_.size()) + " outcomes but " +
                             std::to_string(prepared_.size()) + " prepared states");
  }
  for (const auto& s : prepared_) {
    if (s.layout() != prepared_.front().layout()) {
      throw InvariantViolation("measure-and-prepare: prepared states do not share one layout");
    }
  }
}

KrausChannel measure_and_prepare(const MeasureAndPrepareSpec& spec) {
  const auto& in_layout = spec.povm().layout();
  const auto& out_layout = spec.prepared().front().layout();
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < spec.povm().size(); ++k) {
    const auto m_spec = spectrum(spec.povm().elements()[k].entries());
    const auto s_spec = spectrum(spec.prepared()[k].entries());
    for (const auto& [mu, m] : m_spec) {
      for (const auto& [s, v] : s_spec) ops.push_back(std::sqrt(mu * s) * (v * m.adjoint()));
    }
  }
  return KrausChannel::from_operators(std::move(ops), in_layout, out_layout, 1e-9);
}

double choi_trace_distance(const KrausChannel& a, const KrausChannel& b) {
  if (!a.in_layout().same_shape(b.in_layout()) || !a.out_layout().same_shape(b.out_layout())) {
    throw DimensionError("choi distance: channel layouts differ");
  }
  return trace_distance(a.choi().state().entries(), b.choi().state().entries());
}

double eb_negativity(const KrausChannel& ch) {
  const ChoiMatrix& c = ch.choi();
  return negativity(c.state(), c.input_part());
}

EbWitness eb_witness(const KrausChannel& ch) {
  return {eb_negativity(ch), ch.in_dim() * ch.out_dim() <= 6};
}

}  // namespace qdarwin
