#pragma once

#include "itl/formula.hpp"
#include "itl/hilbert.hpp"
#include "itl/poset_model.hpp"
#include "itl/realline.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace itl
{

enum class entry_kind
{
    poset_model,
    real_system,
    derivation,
    formula,
    edges,
};

[[nodiscard]] std::string to_string( entry_kind k );

struct corpus_entry
{
    std::string id;
    entry_kind kind = entry_kind::formula;
    std::filesystem::path path; // absolute
    std::string anchor;         // slug listed in docs/corpus.md
};

// One arrow of the separation graph. The label formula is a theorem of `to`
// and not of `from`.
struct corpus_edge
{
    std::string from;
    std::string to;
    bool solid = true;          // solid: from is included in to
    std::string label;          // schema name, instantiated with phi:=p, psi:=q
    std::string witness_kind;   // "poset", "real" or "none"
    std::string witness_id;
    std::string witness_point;  // world name or rational
    std::string derivation;     // derivation id, or "-"
    std::size_t source_line = 0;
};

[[nodiscard]] std::vector< corpus_edge > parse_edges( std::string_view text );

// An anchored fact. `check` selects what is verified, see docs/corpus.md.
struct expectation
{
    std::string id;
    std::string check;
    std::string arg;
    std::string text;
    std::size_t source_line = 0;
};

struct expectation_result
{
    expectation exp;
    bool passed = false;
    std::string detail;
};

using artifact = std::variant< poset_model, real_system, derivation, formula, std::vector< corpus_edge > >;

class corpus
{
    std::filesystem::path _dir;
    std::vector< corpus_entry > _entries;

    explicit corpus( std::filesystem::path dir );

public:
    // Opens `dir`, else $ITL_CORPUS, else the directory configured at build
    // time. Throws corpus_missing when there is no readable index.
    [[nodiscard]] static corpus open( std::optional< std::filesystem::path > dir = {} );

    [[nodiscard]] const std::filesystem::path& dir() const { return _dir; }
    [[nodiscard]] const std::vector< corpus_entry >& entries() const { return _entries; }

    // Throws unknown_entry.
    [[nodiscard]] const corpus_entry& entry( std::string_view id ) const;

    // Parse and validation errors are rethrown with the entry id prepended.
    [[nodiscard]] artifact load( std::string_view id ) const;
    [[nodiscard]] poset_model load_poset( std::string_view id ) const;
    [[nodiscard]] real_system load_real( std::string_view id ) const;
    [[nodiscard]] derivation load_derivation( std::string_view id ) const;
    [[nodiscard]] formula load_formula( std::string_view id ) const;
    [[nodiscard]] std::vector< corpus_edge > load_edges( std::string_view id ) const;

    [[nodiscard]] std::vector< expectation > expectations() const;
};

// Loads every entry (or only `filter`) and runs its anchored checks, in file
// order.
[[nodiscard]] std::vector< expectation_result > run_paper_suite( const corpus& c, std::string_view filter = {} );

} // namespace itl
