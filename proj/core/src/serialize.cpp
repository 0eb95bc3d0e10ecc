#include "suspflow/serialize.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace suspflow {

namespace {

std::vector<std::string> tokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long to_int(const std::string& tok) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected integer, got '" + tok + "'");
  }
  if (pos != tok.size()) throw std::invalid_argument("expected integer, got '" + tok + "'");
  return v;
}

double to_real(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected number, got '" + tok + "'");
  }
  if (pos != tok.size()) throw std::invalid_argument("expected number, got '" + tok + "'");
  return v;
}

}  // namespace

std::string format_map(const HyperbolicToralMap& m) {
  const Mat2i& e = m.matrix();
  std::ostringstream out;
  out << e.a << ' ' << e.b << ' ' << e.c << ' ' << e.d;
  return out.str();
}

HyperbolicToralMap parse_map(const std::string& text) {
  const auto t = tokens(text);
  if (t.size() != 4) throw std::invalid_argument("map needs 4 integer entries 'a b c d'");
  return HyperbolicToralMap(Mat2i{to_int(t[0]), to_int(t[1]), to_int(t[2]), to_int(t[3])});
}

std::string format_ceiling(const CeilingFunction& c) {
  std::ostringstream out;
  if (c.is_constant()) {
    out << "constant " << format_double(c.base_level());
    return out.str();
  }
  out << "trig " << format_double(c.base_level());
  for (const auto& term : c.terms()) {
    out << ' ' << format_double(term.amplitude) << ' ' << term.freq1 << ' ' << term.freq2 << ' '
        << format_double(term.phase);
  }
  return out.str();
}

CeilingFunction parse_ceiling(const std::string& text) {
  const auto t = tokens(text);
  if (t.empty()) throw std::invalid_argument("ceiling spec is empty");
  if (t[0] == "constant") {
    if (t.size() != 2) throw std::invalid_argument("constant ceiling needs one value");
    return CeilingFunction::constant(to_real(t[1]));
  }
  if (t[0] == "trig") {
    if (t.size() < 2 || (t.size() - 2) % 4 != 0) {
      throw std::invalid_argument("trig ceiling needs 'c0' then groups of 'amp f1 f2 phase'");
    }
    std::vector<TrigTerm> terms;
    for (std::size_t i = 2; i < t.size(); i += 4) {
      terms.push_back(TrigTerm{to_real(t[i]), static_cast<int>(to_int(t[i + 1])),
                               static_cast<int>(to_int(t[i + 2])), to_real(t[i + 3])});
    }
    return CeilingFunction::trig(to_real(t[1]), std::move(terms));
  }
  throw std::invalid_argument("unknown ceiling kind '" + t[0] + "'");
}

std::string format_conjugacy(const BaseConjugacy& h) {
  std::ostringstream out;
  switch (h.kind()) {
    case BaseConjugacy::Kind::identity:
      return "identity";
    case BaseConjugacy::Kind::linear:
      out << "linear " << h.matrix().a << ' ' << h.matrix().b << ' ' << h.matrix().c << ' '
          << h.matrix().d;
      return out.str();
    case BaseConjugacy::Kind::affine:
      out << "affine " << h.matrix().a << ' ' << h.matrix().b << ' ' << h.matrix().c << ' '
          << h.matrix().d << ' ' << format_double(h.shift().x1) << ' '
          << format_double(h.shift().x2);
      return out.str();
    case BaseConjugacy::Kind::callable:
      throw std::invalid_argument("callable conjugacies have no text form");
  }
  return {};
}

BaseConjugacy parse_conjugacy(const std::string& text) {
  const auto t = tokens(text);
  if (t.empty()) throw std::invalid_argument("conjugacy spec is empty");
  if (t[0] == "identity") {
    if (t.size() != 1) throw std::invalid_argument("identity conjugacy takes no arguments");
    return BaseConjugacy::identity();
  }
  if (t[0] == "linear") {
    if (t.size() != 5) throw std::invalid_argument("linear conjugacy needs 4 integer entries");
    return BaseConjugacy::linear(Mat2i{to_int(t[1]), to_int(t[2]), to_int(t[3]), to_int(t[4])});
  }
  if (t[0] == "affine") {
    if (t.size() != 7) {
      throw std::invalid_argument("affine conjugacy needs 4 integer entries and a shift");
    }
    return BaseConjugacy::affine(
        Mat2i{to_int(t[1]), to_int(t[2]), to_int(t[3]), to_int(t[4])},
        TorusPoint::wrapped(to_real(t[5]), to_real(t[6])));
  }
  throw std::invalid_argument("unknown conjugacy kind '" + t[0] + "'");
}

BumpShape parse_bump_shape(const std::string& text) {
  if (text == "exponential") return BumpShape::exponential;
  if (text == "plateau") return BumpShape::plateau;
  throw std::invalid_argument("unknown bump shape '" + text + "' (use exponential|plateau)");
}

std::string format_bump_shape(BumpShape shape) {
  return shape == BumpShape::exponential ? "exponential" : "plateau";
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace suspflow
