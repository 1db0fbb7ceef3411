#include "kicked_top/series_io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "kicked_top/rng.hpp"

namespace kicked_top
{

namespace
{

std::string exact(double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

double parse_double(const std::string& text, const std::string& what)
{
	double v = 0.0;
	const char* first = text.data();
	const char* last = text.data() + text.size();
	while(first < last && *first == ' ') ++first;
	while(last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
	const auto [ptr, ec] = std::from_chars(first, last, v);
	if(ec != std::errc{} || ptr != last) {
		throw ContractError("series csv: cannot parse " + what + " '" + text + "'");
	}
	return v;
}

std::string trim(const std::string& s)
{
	const auto b = s.find_first_not_of(" \t\r");
	if(b == std::string::npos) return {};
	const auto e = s.find_last_not_of(" \t\r");
	return s.substr(b, e - b + 1);
}

} // namespace

std::string format_value(double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.15e", v);
	return buf;
}

CommentList series_metadata(const SeriesMeta& meta)
{
	CommentList c;
	c.emplace_back("measure", measure_name(meta.measure));
	c.emplace_back("twice_j", std::to_string(meta.spin.twice_j()));
	c.emplace_back("alpha", exact(meta.alpha));
	if(meta.k) c.emplace_back("k", exact(*meta.k));
	if(meta.m) c.emplace_back("m", std::to_string(*meta.m));
	if(meta.dk) c.emplace_back("dk", exact(*meta.dk));
	if(meta.angles) {
		c.emplace_back("theta", exact(meta.angles->theta));
		c.emplace_back("phi", exact(meta.angles->phi));
	}
	if(meta.coarse_len) c.emplace_back("coarse_len", std::to_string(*meta.coarse_len));
	if(meta.partition) c.emplace_back("partition", *meta.partition);
	if(meta.observable) c.emplace_back("observable", *meta.observable == OtocObservable::Jz ? "jz" : "goe");
	if(meta.w_seed) c.emplace_back("w_seed", std::to_string(*meta.w_seed));
	c.emplace_back("seed", std::to_string(meta.seed));
	c.emplace_back("rng", kRngName);
	return c;
}

void write_comments(std::ostream& os, const CommentList& comments)
{
	for(const auto& [key, value] : comments) {
		os << "# " << key << ": " << value << '\n';
	}
}

void write_series_csv(std::ostream& os, const MeasureSeries& s, const CommentList& comments)
{
	s.validate();
	write_comments(os, series_metadata(s.meta));
	write_comments(os, comments);
	os << s.axis_name << ',' << measure_name(s.meta.measure) << '\n';
	for(std::size_t i = 0; i < s.axis.size(); ++i) {
		os << format_value(s.axis[i]) << ',' << format_value(s.values[i]) << '\n';
	}
}

MeasureSeries read_series_csv(std::istream& is)
{
	std::map<std::string, std::string> meta;
	std::string line;
	std::string header;
	while(std::getline(is, line)) {
		if(line.empty()) continue;
		if(line[0] == '#') {
			const auto colon = line.find(':');
			if(colon != std::string::npos) {
				meta[trim(line.substr(1, colon - 1))] = trim(line.substr(colon + 1));
			}
			continue;
		}
		header = trim(line);
		break;
	}
	const auto comma = header.find(',');
	if(comma == std::string::npos) {
		throw ContractError("series csv: missing 'axis,measure' header");
	}

	MeasureSeries s;
	s.axis_name = header.substr(0, comma);
	const std::string measure = meta.count("measure") ? meta["measure"] : header.substr(comma + 1);
	s.meta.measure = parse_measure(measure);
	if(!meta.count("twice_j")) {
		throw ContractError("series csv: metadata must record twice_j");
	}
	s.meta.spin = Spin(int(parse_double(meta["twice_j"], "twice_j")));
	if(meta.count("alpha")) s.meta.alpha = parse_double(meta["alpha"], "alpha");
	if(meta.count("k")) s.meta.k = parse_double(meta["k"], "k");
	if(meta.count("m")) s.meta.m = int(parse_double(meta["m"], "m"));
	if(meta.count("dk")) s.meta.dk = parse_double(meta["dk"], "dk");
	if(meta.count("theta") && meta.count("phi")) {
		s.meta.angles = CoherentAngles{parse_double(meta["theta"], "theta"), parse_double(meta["phi"], "phi")};
	}
	if(meta.count("coarse_len")) s.meta.coarse_len = int(parse_double(meta["coarse_len"], "coarse_len"));
	if(meta.count("partition")) s.meta.partition = meta["partition"];
	if(meta.count("observable")) {
		s.meta.observable = meta["observable"] == "jz" ? OtocObservable::Jz : OtocObservable::Goe;
	}
	if(meta.count("w_seed")) s.meta.w_seed = std::stoull(meta["w_seed"]);
	if(meta.count("seed")) s.meta.seed = std::stoull(meta["seed"]);

	while(std::getline(is, line)) {
		if(trim(line).empty() || line[0] == '#') continue;
		const auto c = line.find(',');
		if(c == std::string::npos) {
			throw ContractError("series csv: row without comma: '" + line + "'");
		}
		s.axis.push_back(parse_double(line.substr(0, c), "axis value"));
		s.values.push_back(parse_double(line.substr(c + 1), "measure value"));
	}
	s.validate();
	return s;
}

} // namespace kicked_top
