#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgn/blocks.hpp"
#include "pgn/classify.hpp"
#include "pgn/construct.hpp"
#include "pgn/exterior.hpp"
#include "pgn/minima.hpp"
#include "pgn/roy_system.hpp"
#include "pgn/transference.hpp"

namespace pgn {

using Json = nlohmann::ordered_json;

// %.15g
std::string format_double(double v);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const Json& j);
Json to_json(const ExtendedRational& r);

Json to_json(const PLMap& m);
PLMap plmap_from_json(const Json& j);
Json to_json(const RoySystem& s);
RoySystem roy_from_json(const Json& j);
Json to_json(const AxiomReport& r);
AxiomReport axiom_report_from_json(const Json& j);

Json to_json(const BlockParams& p);
BlockParams block_params_from_json(const Json& j);
Json to_json(const Block& b, const BlockExtrema& e);

Json to_json(const ConstructionParams& p);
Json to_json(const Diagnostics& d, const Construction& c);
Diagnostics diagnostics_from_json(const Json& j);

Json to_json(const InequalityCheck& c);
Json to_json(const TauReport& r);
Json to_json(const TransferenceReport& r);

Json to_json(const MultiVector& m);
MultiVector multivector_from_json(const Json& j);
Json to_json(const RationalSubspace& L);
Json to_json(const std::vector<ApproxRecord>& records);
Json to_json(const DirichletWitness& w);

Json to_json(const DiCheck& c);
Json to_json(const TailStats& s);
Json to_json(const ExponentEstimate& e);

// Values at every breakpoint of the merged partition: t, P_1.. exact, then *_float columns.
std::string samples_csv(const RoySystem& s);
RoySystem roy_from_samples_csv(const std::string& text);

// Q, t, lambda_1.., L_1.., g_1..
std::string profile_csv(const Profile& p);
// x and witnesses are not part of the format; floats are recomputed from lambda.
Profile profile_from_csv(const std::string& text);

// FNV-1a over "n|x_1,..,x_n|Q", as 16 hex digits.
std::string profile_cache_key(int n, const std::vector<Rational>& x, const Rational& Q);

// Directory of one-row profile CSVs named by profile_cache_key.
class ProfileCache {
public:
    explicit ProfileCache(std::string dir);
    std::optional<std::vector<Rational>> load(int n, const std::vector<Rational>& x, const Rational& Q) const;
    void store(int n, const std::vector<Rational>& x, const ProfileRow& row) const;
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace pgn
