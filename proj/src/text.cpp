#include "rauzy/text.h"

#include <algorithm>
#include <cctype>

namespace rauzy {

ParseError::ParseError(const std::string& what, std::size_t position)
    : InvalidInput(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  // Nonnegative decimal integer.
  int number() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000) fail("number too large");
    }
    return static_cast<int>(v);
  }
  int digit() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a letter");
    return text_[pos_++] - '0';
  }
  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }
  std::size_t pos() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

struct RawRule {
  int letter;
  std::size_t letter_pos;
  std::size_t image_pos;
  std::string_view image;
};

}  // namespace

Substitution parse_substitution(std::string_view text) {
  // Split into rules first: the letter syntax depends on the alphabet size.
  std::vector<RawRule> rules;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view chunk = text.substr(start, end - start);
    Cursor cur(chunk, start);
    if (!cur.done()) {
      const std::size_t lp = start + cur.pos();
      const int letter = cur.number();
      cur.expect("->");
      cur.skip_space();
      rules.push_back({letter, lp, start + cur.pos(), chunk.substr(cur.pos())});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (rules.empty()) throw ParseError("no rules", 0);

  const int n = static_cast<int>(rules.size());
  std::vector<Word> images(n);
  std::vector<bool> seen(n, false);
  for (const RawRule& r : rules) {
    if (r.letter < 1 || r.letter > n) {
      // n rules must cover exactly 1..n; name a letter without a rule.
      int missing = 1;
      while (std::any_of(rules.begin(), rules.end(), [&](const RawRule& q) { return q.letter == missing; })) ++missing;
      throw ParseError("rule letter " + std::to_string(r.letter) + " out of range 1.." + std::to_string(n) +
                           " (no rule for letter " + std::to_string(missing) + ")",
                       r.letter_pos);
    }
    if (seen[r.letter - 1]) throw ParseError("duplicate rule for letter " + std::to_string(r.letter), r.letter_pos);
    seen[r.letter - 1] = true;

    Cursor cur(r.image, r.image_pos);
    Word img;
    if (n <= 9) {
      while (cur.at_digit()) img.push_back(cur.digit());
    } else if (cur.at_digit()) {
      img.push_back(cur.number());
      while (cur.accept(",")) img.push_back(cur.number());
    }
    if (!cur.done()) cur.fail("unexpected character");
    if (img.empty()) throw ParseError("empty image for letter " + std::to_string(r.letter), r.image_pos);
    for (Letter x : img)
      if (x < 1 || x > n)
        throw ParseError("letter " + std::to_string(x) + " in the image of " + std::to_string(r.letter) +
                             " out of range 1.." + std::to_string(n),
                         r.image_pos);
    images[r.letter - 1] = std::move(img);
  }
  return Substitution(n, std::move(images));
}

std::string format_substitution(const Substitution& s) {
  std::string out;
  for (Letter a = 1; a <= s.alphabet(); ++a) {
    if (a > 1) out += "; ";
    out += std::to_string(a) + "->" + format_word(s(a), s.alphabet());
  }
  return out;
}

std::vector<Occurrence> parse_occurrences(std::string_view text) {
  Cursor cur(text);
  std::vector<Occurrence> out;
  if (cur.done()) throw ParseError("empty occurrence list", 0);
  do {
    cur.expect("(");
    Occurrence o;
    o.j = cur.number();
    if (!cur.accept(";")) cur.expect(",");
    o.k = cur.number();
    cur.expect(")");
    out.push_back(o);
  } while (cur.accept(","));
  if (!cur.done()) cur.fail("unexpected character");
  return out;
}

std::string format_occurrences(const std::vector<Occurrence>& occs) {
  std::string out;
  for (const Occurrence& o : occs) {
    if (!out.empty()) out += ",";
    out += "(" + std::to_string(o.j) + ";" + std::to_string(o.k) + ")";
  }
  return out;
}

std::pair<Letter, Letter> parse_letter_pair(std::string_view text) {
  Cursor cur(text);
  const int a = cur.number();
  cur.expect(",");
  const int c = cur.number();
  if (!cur.done()) cur.fail("unexpected character");
  return {a, c};
}

}  // namespace rauzy
