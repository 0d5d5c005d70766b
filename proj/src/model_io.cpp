#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "krein/error.hpp"
#include "krein/format.hpp"
#include "krein/models.hpp"

namespace krein {

std::string format_double(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

double parse_double(std::string_view token)
{
  double value = 0.0;
  const char *first = token.data();
  const char *last = first + token.size();
  if (!token.empty() && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::FileFormatError, "not a number: '" + std::string(token) + "'");
  }
  return value;
}

namespace {

constexpr std::string_view kMagic = "krein-model";
constexpr int kVersion = 1;

void write_row(std::ostream &os, const auto &row)
{
  for (Index j = 0; j < row.size(); ++j) {
    const Complex v = row(j);
    os << (j == 0 ? "" : " ") << format_double(v.real()) << ' ' << format_double(v.imag());
  }
  os << '\n';
}

void write_matrix(std::ostream &os, const Matrix &m)
{
  for (Index i = 0; i < m.rows(); ++i) {
    write_row(os, m.row(i));
  }
}

// Line-oriented reader that skips blank lines and '#' comments.
class LineReader {
public:
  explicit LineReader(std::istream &is) : is_(is) {}

  std::vector<std::string> next()
  {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string tok; ss >> tok;) {
        tokens.push_back(tok);
      }
      if (!tokens.empty()) {
        return tokens;
      }
    }
    fail("unexpected end of file");
  }

  std::string keyword(std::string_view expected)
  {
    auto tokens = next();
    if (tokens.size() != 1 || tokens[0] != expected) {
      fail("expected '" + std::string(expected) + "'");
    }
    return tokens[0];
  }

  Index integer_field(std::string_view name)
  {
    auto tokens = next();
    if (tokens.size() != 2 || tokens[0] != name) {
      fail("expected '" + std::string(name) + " <value>'");
    }
    Index value = 0;
    auto [ptr, ec] = std::from_chars(tokens[1].data(), tokens[1].data() + tokens[1].size(), value);
    if (ec != std::errc() || ptr != tokens[1].data() + tokens[1].size() || value < 1) {
      fail("bad value for " + std::string(name));
    }
    return value;
  }

  Vector complex_row(Index count)
  {
    auto tokens = next();
    if (static_cast<Index>(tokens.size()) != 2 * count) {
      fail("expected " + std::to_string(count) + " complex entries");
    }
    Vector row(count);
    for (Index j = 0; j < count; ++j) {
      row(j) = Complex(parse_double(tokens[2 * j]), parse_double(tokens[2 * j + 1]));
    }
    return row;
  }

  Matrix complex_matrix(Index rows, Index cols)
  {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      m.row(i) = complex_row(cols).transpose();
    }
    return m;
  }

  [[noreturn]] void fail(const std::string &what) const
  {
    throw Error(ErrorCode::FileFormatError, "line " + std::to_string(line_no_) + ": " + what);
  }

private:
  std::istream &is_;
  int line_no_ = 0;
};

} // namespace

void write_model(std::ostream &os, const BaseOperator &op, const TraceMap &trace, const std::optional<Matrix> &theta)
{
  os << kMagic << ' ' << kVersion << '\n';
  os << "kind " << (op.kind() == OperatorKind::Dense ? "dense" : "tridiagonal") << '\n';
  os << "n " << op.dim() << '\n';
  os << "k " << trace.aux_dim() << '\n';
  os << "operator\n";
  if (op.kind() == OperatorKind::Dense) {
    write_matrix(os, op.dense_entries());
  } else {
    write_row(os, op.diagonal().cast<Complex>());
    if (op.dim() > 1) {
      write_row(os, op.offdiagonal());
    }
  }
  os << "trace\n";
  write_matrix(os, trace.matrix());
  if (theta) {
    os << "theta\n";
    write_matrix(os, *theta);
  }
  os << "end\n";
}

Model read_model(std::istream &is)
{
  LineReader in(is);
  auto header = in.next();
  if (header.size() != 2 || header[0] != kMagic) {
    in.fail("missing 'krein-model <version>' header");
  }
  if (header[1] != std::to_string(kVersion)) {
    in.fail("unsupported model file version " + header[1]);
  }
  auto kind = in.next();
  if (kind.size() != 2 || kind[0] != "kind" || (kind[1] != "dense" && kind[1] != "tridiagonal")) {
    in.fail("expected 'kind dense|tridiagonal'");
  }
  const Index n = in.integer_field("n");
  const Index k = in.integer_field("k");
  in.keyword("operator");

  std::optional<BaseOperator> op;
  if (kind[1] == "dense") {
    op = BaseOperator::dense(in.complex_matrix(n, n));
  } else {
    const Vector diag = in.complex_row(n);
    if (diag.imag().cwiseAbs().maxCoeff() != 0.0) {
      in.fail("tridiagonal diagonal must be real");
    }
    Vector off = n > 1 ? in.complex_row(n - 1) : Vector(0);
    op = BaseOperator::tridiagonal(diag.real(), std::move(off));
  }
  in.keyword("trace");
  TraceMap trace(in.complex_matrix(k, n));

  std::optional<Matrix> theta;
  auto tokens = in.next();
  if (tokens.size() == 1 && tokens[0] == "theta") {
    theta = in.complex_matrix(k, k);
    tokens = in.next();
  }
  if (tokens.size() != 1 || tokens[0] != "end") {
    in.fail("expected 'end'");
  }
  ModelSpec spec;
  spec.kind = ModelKind::FromFile;
  spec.n = n;
  spec.k = k;
  return Model{spec, std::move(*op), std::move(trace), std::move(theta)};
}

void save_model(const std::string &path, const Model &model)
{
  std::ofstream os(path);
  if (!os) {
    throw Error(ErrorCode::FileFormatError, "cannot open '" + path + "' for writing");
  }
  write_model(os, model.op, model.trace, model.theta);
}

Model load_model(const std::string &path)
{
  std::ifstream is(path);
  if (!is) {
    throw Error(ErrorCode::FileFormatError, "cannot open '" + path + "'");
  }
  Model model = read_model(is);
  model.spec.path = path;
  return model;
}

} // namespace krein
