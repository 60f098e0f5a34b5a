#include "pseig/gallery.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace pseig {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

ComplexMatrix grcar(int n, int k) {
  if (n < 2) throw std::invalid_argument("grcar: n must be >= 2");
  if (k < 1 || k >= n) throw std::invalid_argument("grcar: need 1 <= k < n");
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) a(i, i - 1) = -1.0;
    for (int j = i; j <= std::min(n - 1, i + k); ++j) a(i, j) = 1.0;
  }
  return a;
}

ComplexMatrix kahan(int n, double theta) {
  if (n < 1) throw std::invalid_argument("kahan: n must be >= 1");
  if (!(theta > 0.0) || !(theta < M_PI / 2 + 1e-9))
    throw std::invalid_argument("kahan: need 0 < theta <= pi/2");
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  double si = 1.0;  // s^i, row scaling
  for (int i = 0; i < n; ++i) {
    a(i, i) = si;
    for (int j = i + 1; j < n; ++j) a(i, j) = -c * si;
    si *= s;
  }
  return a;
}

ComplexMatrix pentoep(int n, double a, double b, double c, double d, double e) {
  if (n < 1) throw std::invalid_argument("pentoep: n must be >= 1");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = c;
    if (i + 1 < n) {
      m(i + 1, i) = b;
      m(i, i + 1) = d;
    }
    if (i + 2 < n) {
      m(i + 2, i) = a;
      m(i, i + 2) = e;
    }
  }
  return m;
}

ComplexMatrix random_dense(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_dense: n must be >= 1");
  Rng rng(seed);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform();
  return a;
}

ComplexMatrix normal_from_spectrum(const std::vector<Complex>& eigs,
                                   std::uint64_t seed) {
  if (eigs.empty())
    throw std::invalid_argument("normal_from_spectrum: empty spectrum");
  const int n = static_cast<int>(eigs.size());
  Rng rng(seed);
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // Fix column phases against the R diagonal so Q is Haar distributed and the
  // construction is a pure function of the seed.
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = eigs[i];
  return q.adjoint() * d * q;
}

ComplexMatrix diag_matrix(const std::vector<Complex>& entries) {
  if (entries.empty()) throw std::invalid_argument("diag: empty diagonal");
  const int n = static_cast<int>(entries.size());
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = entries[i];
  return a;
}

namespace {

const char* name_str(GalleryName n) {
  switch (n) {
    case GalleryName::grcar: return "grcar";
    case GalleryName::kahan: return "kahan";
    case GalleryName::pentoep: return "pentoep";
    case GalleryName::random_dense: return "random_dense";
    case GalleryName::normal_from_spectrum: return "normal_from_spectrum";
    case GalleryName::diag: return "diag";
  }
  return "?";
}

double parse_number(const std::string& tok) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("gallery spec: bad number '" + tok + "'");
  }
}

}  // namespace

GallerySpec GallerySpec::parse(const std::string& text) {
  const auto lp = text.find('(');
  const auto rp = text.rfind(')');
  if (lp == std::string::npos || rp == std::string::npos || rp < lp)
    throw std::invalid_argument("gallery spec: expected name(args...) in '" + text + "'");

  GallerySpec spec;
  std::string name = text.substr(0, lp);
  name.erase(std::remove_if(name.begin(), name.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             name.end());
  if (name == "grcar") spec.name = GalleryName::grcar;
  else if (name == "kahan") spec.name = GalleryName::kahan;
  else if (name == "pentoep") spec.name = GalleryName::pentoep;
  else if (name == "random_dense") spec.name = GalleryName::random_dense;
  else if (name == "normal_from_spectrum") spec.name = GalleryName::normal_from_spectrum;
  else if (name == "diag") spec.name = GalleryName::diag;
  else throw std::invalid_argument("gallery spec: unknown generator '" + name + "'");

  std::vector<double> args;
  {
    std::stringstream ss(text.substr(lp + 1, rp - lp - 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(parse_number(tok));
  }

  std::string tail = text.substr(rp + 1);
  tail.erase(std::remove_if(tail.begin(), tail.end(),
                            [](unsigned char c) { return std::isspace(c); }),
             tail.end());
  if (!tail.empty()) {
    if (tail[0] != '@')
      throw std::invalid_argument("gallery spec: unexpected trailing '" + tail + "'");
    std::uint64_t s = 0;
    const char* b = tail.data() + 1;
    const char* e = tail.data() + tail.size();
    auto res = std::from_chars(b, e, s);
    if (res.ec != std::errc() || res.ptr != e)
      throw std::invalid_argument("gallery spec: bad seed in '" + text + "'");
    spec.seed = s;
  }

  auto require_arity = [&](size_t lo, size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw std::invalid_argument("gallery spec: wrong argument count for " +
                                  std::string(name_str(spec.name)));
  };
  auto leading_order = [&]() {
    const double nv = args[0];
    if (nv < 1 || nv != std::floor(nv))
      throw std::invalid_argument("gallery spec: order must be a positive integer");
    return static_cast<int>(nv);
  };

  switch (spec.name) {
    case GalleryName::grcar:
      require_arity(1, 2);
      spec.n = leading_order();
      spec.params.assign(args.begin() + 1, args.end());
      break;
    case GalleryName::kahan:
      require_arity(1, 2);
      spec.n = leading_order();
      spec.params.assign(args.begin() + 1, args.end());
      break;
    case GalleryName::pentoep:
      require_arity(6, 6);
      spec.n = leading_order();
      spec.params.assign(args.begin() + 1, args.end());
      break;
    case GalleryName::random_dense:
      require_arity(1, 1);
      spec.n = leading_order();
      if (!spec.seed) throw std::invalid_argument("gallery spec: random_dense needs @seed");
      break;
    case GalleryName::normal_from_spectrum:
      require_arity(2, 4096);
      if (args.size() % 2 != 0)
        throw std::invalid_argument(
            "gallery spec: normal_from_spectrum takes re,im pairs");
      spec.n = static_cast<int>(args.size() / 2);
      spec.params = args;
      if (!spec.seed)
        throw std::invalid_argument("gallery spec: normal_from_spectrum needs @seed");
      break;
    case GalleryName::diag:
      require_arity(1, 4096);
      spec.n = static_cast<int>(args.size());
      spec.params = args;
      break;
  }
  return spec;
}

std::string GallerySpec::to_string() const {
  std::ostringstream os;
  os << name_str(name) << '(';
  auto emit = [&os](double v, bool first) {
    if (!first) os << ',';
    os << v;
  };
  switch (name) {
    case GalleryName::diag:
    case GalleryName::normal_from_spectrum: {
      for (size_t i = 0; i < params.size(); ++i) emit(params[i], i == 0);
      break;
    }
    default: {
      os << n;
      for (double p : params) emit(p, false);
      break;
    }
  }
  os << ')';
  if (seed) os << '@' << *seed;
  return os.str();
}

ComplexMatrix GallerySpec::build() const {
  switch (name) {
    case GalleryName::grcar:
      return params.empty() ? grcar(n) : grcar(n, static_cast<int>(params[0]));
    case GalleryName::kahan:
      return params.empty() ? kahan(n) : kahan(n, params[0]);
    case GalleryName::pentoep:
      return pentoep(n, params[0], params[1], params[2], params[3], params[4]);
    case GalleryName::random_dense:
      return random_dense(n, *seed);
    case GalleryName::normal_from_spectrum: {
      std::vector<Complex> eigs;
      for (size_t i = 0; i + 1 < params.size(); i += 2)
        eigs.emplace_back(params[i], params[i + 1]);
      return normal_from_spectrum(eigs, *seed);
    }
    case GalleryName::diag: {
      std::vector<Complex> entries;
      for (double p : params) entries.emplace_back(p, 0.0);
      return diag_matrix(entries);
    }
  }
  throw std::logic_error("gallery spec: unreachable");
}

}  // namespace pseig
