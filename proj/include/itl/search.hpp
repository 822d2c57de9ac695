#pragma once

#include "itl/corpus.hpp"
#include "itl/formula.hpp"
#include "itl/hilbert.hpp"
#include "itl/poset_model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itl
{

// e: expanding posets (S order-preserving); p: persistent posets (also open).
enum class model_class
{
    e,
    p,
};

[[nodiscard]] std::string to_string( model_class c );
[[nodiscard]] std::optional< model_class > parse_model_class( std::string_view s );

struct semantic_class
{
    model_class kind = model_class::e;
    std::size_t bound = 4; // largest carrier size enumerated
};

struct search_options
{
    std::size_t max_bound = 5;
    bool dedup = false;      // keep one carrier per isomorphism class
    std::size_t threads = 0; // 0: one per hardware thread
};

// Carriers are visited by size, then order, then map; the same inputs always
// give the same sequence. The visitor returns false to stop.
// Throws bound_too_large when cls.bound exceeds opts.max_bound.
void for_each_frame( const semantic_class& cls, const std::function< bool( const dynamic_poset& ) >& visit,
                     const search_options& opts = {} );

// Every carrier paired with every up-set valuation of `atoms`.
void enumerate_models( const semantic_class& cls, const std::vector< std::string >& atoms,
                       const std::function< bool( const poset_model& ) >& visit, const search_options& opts = {} );

[[nodiscard]] std::vector< world_set > up_sets( const dynamic_poset& frame );

// Labeled encoding of a carrier: order rows then the map.
[[nodiscard]] std::string encode_frame( const dynamic_poset& frame );
// Least encoding over all relabelings.
[[nodiscard]] std::string canonical_form( const dynamic_poset& frame );

enum class validity_outcome
{
    valid_up_to,
    countermodel,
    undetermined,
};

[[nodiscard]] std::string to_string( validity_outcome o );

struct countermodel
{
    poset_model model;
    std::size_t world = 0; // least falsifying world
    formula f;
};

struct validity_result
{
    formula f;
    semantic_class cls;
    validity_outcome outcome = validity_outcome::undetermined;
    std::optional< countermodel > witness;
    std::size_t models_checked = 0;
    std::string note;
};

// Evaluates f on every model of the class up to the bound and returns the
// first countermodel in enumeration order. Countermodels are re-checked with
// eval before they are returned; a failed re-check gives undetermined.
[[nodiscard]] validity_result validity( const formula& f, const semantic_class& cls, const search_options& opts = {} );

// One record per query; the countermodel, if any, in the model file format.
[[nodiscard]] std::string to_record( const validity_result& r );

struct sweep_entry
{
    std::string schema;
    validity_result result;
};

struct sweep_report
{
    std::string logic;
    semantic_class cls;
    std::vector< sweep_entry > entries;

    [[nodiscard]] bool all_valid() const;
};

// Instantiates every schema of the logic lying in its language with
// phi:=p, psi:=q, chi:=r (weak box for weak logics) and checks validity.
[[nodiscard]] sweep_report soundness_sweep( const logic_spec& logic, const semantic_class& cls,
                                            const search_options& opts = {} );

enum class edge_status
{
    verified,
    failed,
    no_witness,
};

[[nodiscard]] std::string to_string( edge_status s );

struct separation_certificate
{
    corpus_edge edge;
    formula f;
    std::string logic_in;  // has f
    std::string logic_out; // lacks f
    edge_status status = edge_status::failed;
    bool falsified = false;
    std::string witness_detail;
    bool out_sound = false; // logic_out holds on the witness structure
    std::string soundness_detail;
    std::optional< bool > derivation_accepted;
    std::optional< bool > inclusion; // solid edges: axioms of logic_out derivable in logic_in
    std::string reason;
};

struct separation_report
{
    std::vector< std::string > logics;
    std::vector< separation_certificate > edges;

    [[nodiscard]] bool all_verified() const;
    [[nodiscard]] std::string render() const;
    [[nodiscard]] std::string records() const;
};

// Checks every edge of `edges_id` in the corpus. Throws corpus_missing.
[[nodiscard]] separation_report build_separation_matrix( const corpus& c, std::string_view edges_id = "fig6-edges",
                                                         const search_options& opts = {} );

} // namespace itl
