#include "kicked_top/literals.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace kicked_top
{

namespace
{

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ; unary := '-' unary | atom
// atom := number | "pi" | '(' expr ')'
class AngleParser
{
public:
	explicit AngleParser(const std::string& text) : text_{text} {}

	double parse()
	{
		const double v = expr();
		skip_ws();
		if(pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
		return v;
	}

private:
	[[noreturn]] void fail(const std::string& why) const
	{
		throw SpecError("angle literal '" + text_ + "': " + why);
	}

	void skip_ws()
	{
		while(pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
	}

	bool eat(char c)
	{
		skip_ws();
		if(pos_ < text_.size() && text_[pos_] == c) {
			++pos_;
			return true;
		}
		return false;
	}

	double expr()
	{
		double v = term();
		for(;;) {
			if(eat('+')) v += term();
			else if(eat('-')) v -= term();
			else return v;
		}
	}

	double term()
	{
		double v = unary();
		for(;;) {
			if(eat('*')) v *= unary();
			else if(eat('/')) {
				const double d = unary();
				if(d == 0.0) fail("division by zero");
				v /= d;
			} else return v;
		}
	}

	double unary()
	{
		if(eat('-')) return -unary();
		if(eat('+')) return unary();
		return atom();
	}

	double atom()
	{
		skip_ws();
		if(eat('(')) {
			const double v = expr();
			if(!eat(')')) fail("missing ')'");
			return v;
		}
		if(text_.compare(pos_, 2, "pi") == 0) {
			pos_ += 2;
			return std::numbers::pi;
		}
		double v = 0.0;
		const auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
		if(ec != std::errc{}) fail("expected a number or 'pi'");
		pos_ = std::size_t(ptr - text_.data());
		return v;
	}

	const std::string& text_;
	std::size_t pos_ = 0;
};

} // namespace

double parse_angle(const std::string& text)
{
	const double v = AngleParser(text).parse();
	if(!std::isfinite(v)) throw SpecError("angle literal '" + text + "' is not finite");
	return v;
}

Spin parse_spin(const std::string& text)
{
	const auto bad = [&] { return SpecError("spin '" + text + "' must be a positive integer or half-integer (e.g. 2, 3/2)"); };
	const auto slash = text.find('/');
	if(slash != std::string::npos) {
		int num = 0, den = 0;
		const auto r1 = std::from_chars(text.data(), text.data() + slash, num);
		const auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), den);
		if(r1.ec != std::errc{} || r1.ptr != text.data() + slash || r2.ec != std::errc{}
			|| r2.ptr != text.data() + text.size() || den != 2 || num < 1) {
			throw bad();
		}
		return Spin(num);
	}
	double v = 0.0;
	const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
	if(r.ec != std::errc{} || r.ptr != text.data() + text.size()) throw bad();
	const double twice = 2.0 * v;
	if(!(twice >= 1.0) || twice != std::round(twice) || twice > 1e6) throw bad();
	return Spin(int(twice));
}

std::string format_spin(const Spin& spin)
{
	return spin.is_integer() ? std::to_string(spin.twice_j() / 2) : std::to_string(spin.twice_j()) + "/2";
}

} // namespace kicked_top
