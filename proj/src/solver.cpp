/*
 *  Copyright 2026 The dasp Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#include "dasp/solver.hpp"

#include "dasp/semantics.hpp"
#include "dasp/simplify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace dasp {

std::string to_string( Outcome outcome )
{
    switch( outcome ) {
        case Outcome::Coherent: return "coherent";
        case Outcome::Incoherent: return "incoherent";
        case Outcome::TimedOut: return "timeout";
    }
    return "unknown";
}

namespace {

constexpr std::uint32_t kNoReason = UINT32_MAX;
constexpr Literal kTrue = Literal::neg( kBottom );

struct Clause {
    std::vector< Literal > lits;
    double activity = 0;
    int lbd = 0;
    bool learnt = false;
    bool removed = false;
};

struct Watcher {
    std::uint32_t clause;
    Literal blocker;
};

/* A rule whose head lies on a positive cycle. */
struct CyclicRule {
    AtomId head;
    Literal body;
    std::vector< AtomId > scc_pos;
};

using Clock = std::chrono::steady_clock;

}  // namespace

struct Solver::Impl {
    struct StepResult {
        std::optional< std::uint32_t > conflict;
        bool incoherent = false;
    };

    Impl( const GroundProgram& program, SolverOptions options, Heuristic* heuristic );

    // assignment
    Value value( Literal l ) const
    {
        auto v = assign_[ l.atom() ];
        if( v == 0 )
            return Value::Undefined;
        return ( ( v > 0 ) != l.negative() ) ? Value::True : Value::False;
    }
    int level() const { return static_cast< int >( trail_lim_.size() ); }
    bool is_atom( AtomId v ) const { return v != kBottom && v < natoms_; }
    void assign( Literal l, std::uint32_t reason );
    void new_level() { trail_lim_.push_back( trail_.size() ); }
    void backjump( int target );

    // clauses
    std::uint32_t store( std::vector< Literal > lits, bool learnt );
    void attach( std::uint32_t ref );
    void add_root_clause( std::vector< Literal > lits );
    StepResult add_search_clause( std::vector< Literal > lits );
    bool locked( std::uint32_t ref ) const;
    void reduce_db();
    void bump_clause( Clause& c );

    // construction
    Literal body_literal( const Rule& r, std::map< std::vector< std::uint32_t >, AtomId >& bodies, std::vector< std::pair< AtomId, std::vector< Literal > > >& defs );
    void build( const SimplifyResult& simplified );
    void build_unfounded( const GroundProgram& program, const std::vector< Literal >& rule_bodies );

    // propagation
    std::optional< std::uint32_t > propagate_units();
    std::optional< std::uint32_t > propagate();
    void pend( AtomId a )
    {
        if( !in_pending_[ a ] ) {
            in_pending_[ a ] = true;
            pending_.push_back( a );
        }
    }
    bool unfounded_check( std::optional< std::uint32_t >& conflict );

    // conflicts
    LearnedConstraint analyze( std::uint32_t conflict );
    bool redundant( Literal p, std::uint32_t abstract_levels );
    std::uint32_t abstract_level( AtomId v ) const { return 1u << ( level_[ v ] & 31 ); }
    bool resolve( std::uint32_t conflict );
    void restart();

    // choices
    std::optional< Literal > default_literal();
    StepResult decide_default();
    StepResult choice_step();
    void apply_fallback( const Fallback& f );
    void check_atom( Literal l, const char* what ) const;

    // events
    void flush_true()
    {
        if( heuristic_ && !pending_true_.empty() ) {
            std::vector< Literal > batch;
            batch.swap( pending_true_ );
            heuristic_->on_lits_true( batch );
        }
    }
    std::optional< Literal > latest_decision() const
    {
        for( int l = level(); l > 0; --l ) {
            Literal d = trail_[ trail_lim_[ l - 1 ] ];
            if( is_atom( d.atom() ) )
                return d;
        }
        return std::nullopt;
    }

    bool out_of_budget();
    Answer finish( Outcome outcome );

    const GroundProgram& input_;
    SolverOptions options_;
    Heuristic* heuristic_;
    std::size_t natoms_ = 0;
    std::size_t nvars_ = 0;
    std::size_t input_rules_ = 0;

    std::vector< std::int8_t > assign_;
    std::vector< int > level_;
    std::vector< std::uint32_t > reason_;
    std::vector< Literal > trail_;
    std::vector< std::size_t > trail_lim_;
    std::size_t qhead_ = 0;

    std::vector< Clause > clauses_;
    std::vector< std::vector< Watcher > > watches_;
    std::vector< std::uint32_t > learnts_;
    double clause_inc_ = 1.0;

    ActivityTable activity_;
    LubyRestarts luby_;
    FallbackController fallback_;
    Statistics stats_;
    bool root_conflict_ = false;
    Clock::time_point start_;

    // unfounded sets
    bool has_cycles_ = false;
    std::vector< int > scc_;
    std::vector< CyclicRule > cyclic_rules_;
    std::vector< std::vector< std::uint32_t > > supports_;
    std::vector< std::vector< std::uint32_t > > dependents_;
    std::vector< std::vector< std::uint32_t > > body_false_;
    std::vector< std::int64_t > source_;
    std::vector< AtomId > pending_;
    std::vector< bool > in_pending_;
    std::vector< bool > in_set_;
    std::vector< AtomId > scratch_;

    std::vector< Literal > pending_true_;
    SearchView view_;

    std::vector< char > seen_;
    std::vector< Literal > analyze_stack_;
    std::vector< AtomId > analyze_clear_;
};

Solver::Impl::Impl( const GroundProgram& program, SolverOptions options, Heuristic* heuristic )
    : input_( program ),
      options_( options ),
      heuristic_( heuristic ),
      natoms_( program.atom_count() ),
      input_rules_( program.rule_count() ),
      activity_( program.atom_count(), options.seed ),
      luby_( options.restart_unit )
{
    std::vector< AtomId > frozen;
    if( heuristic_ )
        frozen = heuristic_->on_finished_parsing( program );
    for( AtomId a : frozen )
        if( a == kBottom || a >= natoms_ )
            throw ProtocolError( "frozen atom " + std::to_string( a ) + " is not part of the program" );
    SimplifyResult simplified = simplify( program, frozen );
    build( simplified );
    if( simplified.incoherent )
        root_conflict_ = true;

    view_.program = &input_;
    view_.rule_count = simplified.program.rule_count();
    for( AtomId a = 1; a < natoms_; ++a )
        if( simplified.fixed[ a ] == Value::Undefined )
            view_.atoms.push_back( a );
}

Literal Solver::Impl::body_literal( const Rule& r, std::map< std::vector< std::uint32_t >, AtomId >& bodies, std::vector< std::pair< AtomId, std::vector< Literal > > >& defs )
{
    std::vector< Literal > lits;
    for( AtomId a : r.pos )
        lits.push_back( Literal::pos( a ) );
    for( AtomId a : r.neg )
        lits.push_back( Literal::neg( a ) );
    std::sort( lits.begin(), lits.end() );
    lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
    if( lits.empty() )
        return kTrue;
    if( lits.size() == 1 )
        return lits.front();
    std::vector< std::uint32_t > key;
    for( Literal l : lits )
        key.push_back( l.code() );
    auto it = bodies.find( key );
    if( it != bodies.end() )
        return Literal::pos( it->second );
    AtomId var = static_cast< AtomId >( natoms_ + defs.size() );
    bodies.emplace( std::move( key ), var );
    defs.emplace_back( var, std::move( lits ) );
    return Literal::pos( var );
}

void Solver::Impl::build( const SimplifyResult& simplified )
{
    const GroundProgram& program = simplified.program;
    std::map< std::vector< std::uint32_t >, AtomId > bodies;
    std::vector< std::pair< AtomId, std::vector< Literal > > > defs;
    std::vector< Literal > rule_bodies;
    for( const Rule& r : program.rules() )
        rule_bodies.push_back( r.head == kBottom ? kTrue : body_literal( r, bodies, defs ) );

    nvars_ = natoms_ + defs.size();
    assign_.assign( nvars_, 0 );
    level_.assign( nvars_, 0 );
    reason_.assign( nvars_, kNoReason );
    watches_.resize( 2 * nvars_ );
    seen_.assign( nvars_, 0 );
    trail_.reserve( nvars_ );

    assign( kTrue, kNoReason );
    for( AtomId a = 1; a < natoms_; ++a )
        if( simplified.fixed[ a ] != Value::Undefined )
            assign( Literal( a, simplified.fixed[ a ] == Value::False ), kNoReason );

    for( auto& [ var, lits ] : defs ) {
        std::vector< Literal > big{ Literal::pos( var ) };
        for( Literal l : lits ) {
            big.push_back( ~l );
            add_root_clause( { Literal::neg( var ), l } );
        }
        add_root_clause( std::move( big ) );
    }

    std::vector< std::vector< Literal > > support( natoms_ );
    auto rules = program.rules();
    for( std::size_t i = 0; i < rules.size(); ++i ) {
        const Rule& r = rules[ i ];
        if( r.head == kBottom ) {
            std::vector< Literal > clause;
            for( AtomId a : r.pos )
                clause.push_back( Literal::neg( a ) );
            for( AtomId a : r.neg )
                clause.push_back( Literal::pos( a ) );
            add_root_clause( std::move( clause ) );
            continue;
        }
        if( r.is_vacuous() )
            continue;
        add_root_clause( { ~rule_bodies[ i ], Literal::pos( r.head ) } );
        support[ r.head ].push_back( rule_bodies[ i ] );
    }
    for( AtomId a = 1; a < natoms_; ++a ) {
        if( simplified.fixed[ a ] != Value::Undefined )
            continue;
        std::vector< Literal > clause{ Literal::neg( a ) };
        clause.insert( clause.end(), support[ a ].begin(), support[ a ].end() );
        add_root_clause( std::move( clause ) );
    }
    build_unfounded( program, rule_bodies );
}

void Solver::Impl::build_unfounded( const GroundProgram& program, const std::vector< Literal >& rule_bodies )
{
    auto rules = program.rules();
    std::vector< std::vector< AtomId > > edges( natoms_ );
    for( const Rule& r : rules )
        if( r.head != kBottom && !r.is_vacuous() )
            for( AtomId a : r.pos )
                edges[ r.head ].push_back( a );

    // iterative Tarjan
    scc_.assign( natoms_, -1 );
    std::vector< int > index( natoms_, -1 ), low( natoms_, 0 );
    std::vector< bool > on_stack( natoms_, false );
    std::vector< AtomId > stack;
    std::vector< std::pair< AtomId, std::size_t > > call;
    std::vector< int > component( natoms_, -1 );
    int counter = 0, components = 0;
    for( AtomId root = 1; root < natoms_; ++root ) {
        if( index[ root ] >= 0 )
            continue;
        call.push_back( { root, 0 } );
        while( !call.empty() ) {
            auto& [ v, next ] = call.back();
            if( next == 0 && index[ v ] < 0 ) {
                index[ v ] = low[ v ] = counter++;
                stack.push_back( v );
                on_stack[ v ] = true;
            }
            if( next < edges[ v ].size() ) {
                AtomId w = edges[ v ][ next++ ];
                if( index[ w ] < 0 )
                    call.push_back( { w, 0 } );
                else if( on_stack[ w ] )
                    low[ v ] = std::min( low[ v ], index[ w ] );
                continue;
            }
            if( low[ v ] == index[ v ] ) {
                AtomId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[ w ] = false;
                    component[ w ] = components;
                } while( w != v );
                ++components;
            }
            AtomId done = v;
            call.pop_back();
            if( !call.empty() )
                low[ call.back().first ] = std::min( low[ call.back().first ], low[ done ] );
        }
    }
    std::vector< int > size( components, 0 );
    for( AtomId a = 1; a < natoms_; ++a )
        ++size[ component[ a ] ];
    for( AtomId a = 1; a < natoms_; ++a ) {
        bool self_loop = std::find( edges[ a ].begin(), edges[ a ].end(), a ) != edges[ a ].end();
        if( size[ component[ a ] ] > 1 || self_loop ) {
            scc_[ a ] = component[ a ];
            has_cycles_ = true;
        }
    }
    if( !has_cycles_ )
        return;

    supports_.resize( natoms_ );
    dependents_.resize( natoms_ );
    body_false_.resize( 2 * nvars_ );
    source_.assign( natoms_, -1 );
    in_pending_.assign( natoms_, false );
    in_set_.assign( natoms_, false );
    for( std::size_t i = 0; i < rules.size(); ++i ) {
        const Rule& r = rules[ i ];
        if( r.head == kBottom || r.is_vacuous() || scc_[ r.head ] < 0 )
            continue;
        CyclicRule cr{ r.head, rule_bodies[ i ], {} };
        for( AtomId a : r.pos )
            if( scc_[ a ] == scc_[ r.head ] && std::find( cr.scc_pos.begin(), cr.scc_pos.end(), a ) == cr.scc_pos.end() )
                cr.scc_pos.push_back( a );
        auto id = static_cast< std::uint32_t >( cyclic_rules_.size() );
        supports_[ r.head ].push_back( id );
        for( AtomId a : cr.scc_pos )
            dependents_[ a ].push_back( id );
        body_false_[ ( ~cr.body ).code() ].push_back( id );
        cyclic_rules_.push_back( std::move( cr ) );
    }
    for( AtomId a = 1; a < natoms_; ++a )
        if( scc_[ a ] >= 0 )
            pend( a );
}

void Solver::Impl::assign( Literal l, std::uint32_t reason )
{
    AtomId v = l.atom();
    assign_[ v ] = l.negative() ? -1 : 1;
    level_[ v ] = level();
    reason_[ v ] = reason;
    trail_.push_back( l );
    if( heuristic_ && is_atom( v ) )
        pending_true_.push_back( l );
    if( has_cycles_ )
        for( std::uint32_t r : body_false_[ l.code() ] )
            if( source_[ cyclic_rules_[ r ].head ] == r )
                pend( cyclic_rules_[ r ].head );
}

void Solver::Impl::backjump( int target )
{
    if( target < 0 )
        target = 0;
    if( level() <= target )
        return;
    flush_true();
    std::vector< Literal > unrolled;
    std::size_t stop = trail_lim_[ target ];
    for( std::size_t i = trail_.size(); i-- > stop; ) {
        Literal l = trail_[ i ];
        AtomId v = l.atom();
        assign_[ v ] = 0;
        reason_[ v ] = kNoReason;
        if( v < natoms_ ) {
            activity_.insert( v );
            if( heuristic_ && v != kBottom )
                unrolled.push_back( l );
            if( has_cycles_ && scc_[ v ] >= 0 && source_[ v ] < 0 )
                pend( v );
        }
    }
    trail_.resize( stop );
    trail_lim_.resize( target );
    qhead_ = trail_.size();
    if( heuristic_ && !unrolled.empty() )
        heuristic_->on_unroll_lits( unrolled );
}

std::uint32_t Solver::Impl::store( std::vector< Literal > lits, bool learnt )
{
    auto ref = static_cast< std::uint32_t >( clauses_.size() );
    clauses_.push_back( Clause{ std::move( lits ), 0.0, 0, learnt, false } );
    if( learnt )
        learnts_.push_back( ref );
    return ref;
}

void Solver::Impl::attach( std::uint32_t ref )
{
    const auto& lits = clauses_[ ref ].lits;
    watches_[ ( ~lits[ 0 ] ).code() ].push_back( { ref, lits[ 1 ] } );
    watches_[ ( ~lits[ 1 ] ).code() ].push_back( { ref, lits[ 0 ] } );
}

void Solver::Impl::add_root_clause( std::vector< Literal > lits )
{
    std::sort( lits.begin(), lits.end() );
    lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
    std::vector< Literal > kept;
    for( std::size_t i = 0; i < lits.size(); ++i ) {
        if( i + 1 < lits.size() && lits[ i + 1 ] == ~lits[ i ] )
            return;
        Value v = value( lits[ i ] );
        if( v == Value::True )
            return;
        if( v == Value::Undefined )
            kept.push_back( lits[ i ] );
    }
    if( kept.empty() ) {
        root_conflict_ = true;
        return;
    }
    if( kept.size() == 1 ) {
        assign( kept.front(), kNoReason );
        return;
    }
    attach( store( std::move( kept ), false ) );
}

Solver::Impl::StepResult Solver::Impl::add_search_clause( std::vector< Literal > lits )
{
    std::sort( lits.begin(), lits.end() );
    lits.erase( std::unique( lits.begin(), lits.end() ), lits.end() );
    std::vector< Literal > kept;
    for( std::size_t i = 0; i < lits.size(); ++i ) {
        if( i + 1 < lits.size() && lits[ i + 1 ] == ~lits[ i ] )
            return {};
        if( lits[ i ] == kTrue )
            return {};
        if( lits[ i ] == ~kTrue )
            continue;
        kept.push_back( lits[ i ] );
    }
    if( kept.empty() )
        return { std::nullopt, true };

    auto falsified = [ & ] {
        return std::all_of( kept.begin(), kept.end(), [ & ]( Literal l ) { return value( l ) == Value::False; } );
    };
    if( falsified() ) {
        int top = 0;
        for( Literal l : kept )
            top = std::max( top, level_[ l.atom() ] );
        if( top == 0 )
            return { std::nullopt, true };
        backjump( top - 1 );
    }
    if( kept.size() == 1 ) {
        backjump( 0 );
        if( value( kept.front() ) == Value::False )
            return { std::nullopt, true };
        if( value( kept.front() ) == Value::Undefined )
            assign( kept.front(), kNoReason );
        return { propagate(), false };
    }
    auto rank = [ & ]( Literal l ) {
        Value v = value( l );
        if( v == Value::True )
            return std::pair< int, int >( 0, level_[ l.atom() ] );
        if( v == Value::Undefined )
            return std::pair< int, int >( 1, 0 );
        return std::pair< int, int >( 2, -level_[ l.atom() ] );
    };
    std::stable_sort( kept.begin(), kept.end(), [ & ]( Literal a, Literal b ) { return rank( a ) < rank( b ); } );
    bool unit = value( kept[ 0 ] ) == Value::Undefined && value( kept[ 1 ] ) == Value::False;
    std::uint32_t ref = store( kept, false );
    attach( ref );
    if( unit )
        assign( kept[ 0 ], ref );
    return { propagate(), false };
}

bool Solver::Impl::locked( std::uint32_t ref ) const
{
    const Clause& c = clauses_[ ref ];
    AtomId v = c.lits[ 0 ].atom();
    return reason_[ v ] == ref && value( c.lits[ 0 ] ) == Value::True;
}

void Solver::Impl::bump_clause( Clause& c )
{
    c.activity += clause_inc_;
    if( c.activity > 1e20 ) {
        for( std::uint32_t r : learnts_ )
            clauses_[ r ].activity *= 1e-20;
        clause_inc_ *= 1e-20;
    }
}

void Solver::Impl::reduce_db()
{
    std::size_t limit = std::max< std::size_t >( 5000, 2 * input_rules_ );
    if( learnts_.size() <= limit )
        return;
    std::vector< std::uint32_t > candidates, keep;
    for( std::uint32_t r : learnts_ ) {
        if( clauses_[ r ].lits.size() <= 2 || locked( r ) )
            keep.push_back( r );
        else
            candidates.push_back( r );
    }
    std::stable_sort( candidates.begin(), candidates.end(), [ & ]( std::uint32_t a, std::uint32_t b ) { return clauses_[ a ].activity < clauses_[ b ].activity; } );
    std::size_t drop = candidates.size() / 2;
    for( std::size_t i = 0; i < candidates.size(); ++i ) {
        if( i < drop ) {
            Clause& c = clauses_[ candidates[ i ] ];
            c.removed = true;
            c.lits.clear();
            c.lits.shrink_to_fit();
            ++stats_.deleted;
        }
        else {
            keep.push_back( candidates[ i ] );
        }
    }
    std::sort( keep.begin(), keep.end() );
    learnts_ = std::move( keep );
    for( auto& ws : watches_ )
        ws.erase( std::remove_if( ws.begin(), ws.end(), [ & ]( const Watcher& w ) { return clauses_[ w.clause ].removed; } ), ws.end() );
}

std::optional< std::uint32_t > Solver::Impl::propagate_units()
{
    while( qhead_ < trail_.size() ) {
        Literal p = trail_[ qhead_++ ];
        ++stats_.propagations;
        auto& ws = watches_[ p.code() ];
        Literal false_lit = ~p;
        std::size_t i = 0, j = 0;
        while( i < ws.size() ) {
            Watcher w = ws[ i ];
            if( value( w.blocker ) == Value::True ) {
                ws[ j++ ] = ws[ i++ ];
                continue;
            }
            Clause& c = clauses_[ w.clause ];
            ++i;
            if( c.removed )
                continue;
            if( c.lits[ 0 ] == false_lit )
                std::swap( c.lits[ 0 ], c.lits[ 1 ] );
            Literal first = c.lits[ 0 ];
            Watcher kept{ w.clause, first };
            if( first != w.blocker && value( first ) == Value::True ) {
                ws[ j++ ] = kept;
                continue;
            }
            bool moved = false;
            for( std::size_t k = 2; k < c.lits.size(); ++k ) {
                if( value( c.lits[ k ] ) != Value::False ) {
                    c.lits[ 1 ] = c.lits[ k ];
                    c.lits[ k ] = false_lit;
                    watches_[ ( ~c.lits[ 1 ] ).code() ].push_back( kept );
                    moved = true;
                    break;
                }
            }
            if( moved )
                continue;
            ws[ j++ ] = kept;
            if( value( first ) == Value::False ) {
                while( i < ws.size() )
                    ws[ j++ ] = ws[ i++ ];
                ws.resize( j );
                qhead_ = trail_.size();
                return w.clause;
            }
            assign( first, w.clause );
        }
        ws.resize( j );
    }
    return std::nullopt;
}

std::optional< std::uint32_t > Solver::Impl::propagate()
{
    while( true ) {
        if( auto conflict = propagate_units() )
            return conflict;
        if( pending_.empty() )
            return std::nullopt;
        std::optional< std::uint32_t > conflict;
        bool assigned = unfounded_check( conflict );
        if( conflict )
            return conflict;
        if( !assigned )
            return std::nullopt;
    }
}

bool Solver::Impl::unfounded_check( std::optional< std::uint32_t >& conflict )
{
    std::vector< AtomId > work;
    work.swap( pending_ );
    for( AtomId a : work )
        in_pending_[ a ] = false;

    // drop sources that are no longer valid, along with everything resting on them
    std::vector< AtomId >& region = scratch_;
    region.clear();
    while( !work.empty() ) {
        AtomId a = work.back();
        work.pop_back();
        if( in_set_[ a ] )
            continue;
        std::int64_t s = source_[ a ];
        if( s >= 0 ) {
            if( value( cyclic_rules_[ s ].body ) != Value::False )
                continue;
            source_[ a ] = -1;
        }
        in_set_[ a ] = true;
        region.push_back( a );
        for( std::uint32_t r : dependents_[ a ] ) {
            AtomId h = cyclic_rules_[ r ].head;
            if( source_[ h ] == r ) {
                source_[ h ] = -1;
                work.push_back( h );
            }
        }
    }

    // find new sources
    std::vector< AtomId > queue( region.begin(), region.end() );
    for( std::size_t q = 0; q < queue.size(); ++q ) {
        AtomId a = queue[ q ];
        if( source_[ a ] >= 0 || value( Literal::pos( a ) ) == Value::False )
            continue;
        for( std::uint32_t r : supports_[ a ] ) {
            const CyclicRule& cr = cyclic_rules_[ r ];
            if( value( cr.body ) == Value::False )
                continue;
            bool ok = std::all_of( cr.scc_pos.begin(), cr.scc_pos.end(), [ & ]( AtomId p ) { return source_[ p ] >= 0; } );
            if( !ok )
                continue;
            source_[ a ] = r;
            for( std::uint32_t d : dependents_[ a ] ) {
                AtomId h = cyclic_rules_[ d ].head;
                if( source_[ h ] < 0 && in_set_[ h ] )
                    queue.push_back( h );
            }
            break;
        }
    }

    std::vector< AtomId > unfounded;
    for( AtomId a : region ) {
        in_set_[ a ] = false;
        if( source_[ a ] < 0 && value( Literal::pos( a ) ) != Value::False )
            unfounded.push_back( a );
    }
    if( unfounded.empty() )
        return false;

    for( AtomId a : unfounded )
        in_set_[ a ] = true;
    std::vector< Literal > external;
    for( AtomId a : unfounded ) {
        for( std::uint32_t r : supports_[ a ] ) {
            const CyclicRule& cr = cyclic_rules_[ r ];
            bool internal = std::any_of( cr.scc_pos.begin(), cr.scc_pos.end(), [ & ]( AtomId p ) { return in_set_[ p ]; } );
            if( !internal )
                external.push_back( cr.body );
        }
    }
    for( AtomId a : unfounded )
        in_set_[ a ] = false;
    std::sort( external.begin(), external.end() );
    external.erase( std::unique( external.begin(), external.end() ), external.end() );
    external.erase( std::remove( external.begin(), external.end(), ~kTrue ), external.end() );
    std::stable_sort( external.begin(), external.end(), [ & ]( Literal x, Literal y ) { return level_[ x.atom() ] > level_[ y.atom() ]; } );

    auto loop_clause = [ & ]( AtomId a ) {
        std::vector< Literal > lits{ Literal::neg( a ) };
        lits.insert( lits.end(), external.begin(), external.end() );
        ++stats_.loop_clauses;
        std::uint32_t ref = store( std::move( lits ), true );
        if( clauses_[ ref ].lits.size() >= 2 )
            attach( ref );
        return ref;
    };
    for( AtomId a : unfounded ) {
        if( value( Literal::pos( a ) ) == Value::True ) {
            std::uint32_t ref = loop_clause( a );
            conflict = ref;
            // the rest stays without a source; look at it again after backjumping
            for( AtomId b : unfounded )
                pend( b );
            return true;
        }
    }
    for( AtomId a : unfounded )
        if( value( Literal::pos( a ) ) == Value::Undefined )
            assign( Literal::neg( a ), loop_clause( a ) );
    return true;
}

LearnedConstraint Solver::Impl::analyze( std::uint32_t conflict )
{
    std::vector< Literal > out{ Literal() };
    int path = 0;
    Literal p;
    bool have_p = false;
    std::size_t index = trail_.size();
    std::uint32_t confl = conflict;
    do {
        Clause& c = clauses_[ confl ];
        if( c.learnt )
            bump_clause( c );
        for( std::size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j ) {
            Literal q = c.lits[ j ];
            AtomId v = q.atom();
            if( !seen_[ v ] && level_[ v ] > 0 ) {
                seen_[ v ] = 1;
                if( level_[ v ] >= level() )
                    ++path;
                else
                    out.push_back( q );
            }
        }
        while( !seen_[ trail_[ --index ].atom() ] ) {
        }
        p = trail_[ index ];
        have_p = true;
        confl = reason_[ p.atom() ];
        seen_[ p.atom() ] = 0;
        --path;
    } while( path > 0 );
    out[ 0 ] = ~p;

    // drop literals implied by the rest of the clause
    analyze_clear_.clear();
    for( std::size_t i = 1; i < out.size(); ++i )
        analyze_clear_.push_back( out[ i ].atom() );
    std::uint32_t levels = 0;
    for( std::size_t i = 1; i < out.size(); ++i )
        levels |= abstract_level( out[ i ].atom() );
    std::size_t j = 1;
    for( std::size_t i = 1; i < out.size(); ++i ) {
        AtomId v = out[ i ].atom();
        if( reason_[ v ] == kNoReason || !redundant( out[ i ], levels ) )
            out[ j++ ] = out[ i ];
    }
    out.resize( j );
    for( AtomId v : analyze_clear_ )
        seen_[ v ] = 0;

    LearnedConstraint learned;
    int bt = 0;
    if( out.size() > 1 ) {
        std::size_t max_i = 1;
        for( std::size_t i = 2; i < out.size(); ++i )
            if( level_[ out[ i ].atom() ] > level_[ out[ max_i ].atom() ] )
                max_i = i;
        std::swap( out[ 1 ], out[ max_i ] );
        bt = level_[ out[ 1 ].atom() ];
    }
    std::vector< int > levels_seen;
    for( Literal l : out )
        levels_seen.push_back( level_[ l.atom() ] );
    std::sort( levels_seen.begin(), levels_seen.end() );
    learned.lbd = static_cast< int >( std::unique( levels_seen.begin(), levels_seen.end() ) - levels_seen.begin() );
    learned.literals = std::move( out );
    learned.backjump_level = bt;
    return learned;
}

bool Solver::Impl::redundant( Literal p, std::uint32_t abstract_levels )
{
    analyze_stack_.clear();
    analyze_stack_.push_back( p );
    std::size_t top = analyze_clear_.size();
    while( !analyze_stack_.empty() ) {
        Literal q = analyze_stack_.back();
        analyze_stack_.pop_back();
        const Clause& c = clauses_[ reason_[ q.atom() ] ];
        for( std::size_t i = 1; i < c.lits.size(); ++i ) {
            Literal l = c.lits[ i ];
            AtomId v = l.atom();
            if( seen_[ v ] || level_[ v ] == 0 )
                continue;
            if( reason_[ v ] != kNoReason && ( abstract_level( v ) & abstract_levels ) != 0 ) {
                seen_[ v ] = 1;
                analyze_stack_.push_back( l );
                analyze_clear_.push_back( v );
            }
            else {
                for( std::size_t k = top; k < analyze_clear_.size(); ++k )
                    seen_[ analyze_clear_[ k ] ] = 0;
                analyze_clear_.resize( top );
                return false;
            }
        }
    }
    return true;
}

bool Solver::Impl::resolve( std::uint32_t conflict )
{
    ++stats_.conflicts;
    int top = 0;
    for( Literal l : clauses_[ conflict ].lits )
        top = std::max( top, level_[ l.atom() ] );
    if( top == 0 )
        return false;
    if( top < level() )
        backjump( top );
    LearnedConstraint learned = analyze( conflict );
    backjump( learned.backjump_level );
    flush_true();
    if( heuristic_ )
        heuristic_->on_conflict( latest_decision() );

    ++stats_.learned;
    if( learned.literals.size() == 1 ) {
        assign( learned.literals[ 0 ], kNoReason );
    }
    else {
        std::uint32_t ref = store( learned.literals, true );
        clauses_[ ref ].lbd = learned.lbd;
        attach( ref );
        bump_clause( clauses_[ ref ] );
        assign( learned.literals[ 0 ], ref );
    }
    activity_.bump_and_decay( learned.literals );
    clause_inc_ *= 1.0 / 0.999;
    if( heuristic_ ) {
        std::vector< Literal > body;
        for( Literal l : learned.literals )
            body.push_back( ~l );
        heuristic_->on_learn( body );
    }
    return true;
}

void Solver::Impl::restart()
{
    backjump( 0 );
    ++stats_.restarts;
    luby_.reset_counter();
    flush_true();
    if( heuristic_ )
        heuristic_->on_restart();
}

std::optional< Literal > Solver::Impl::default_literal()
{
    auto lit = activity_.choose( [ & ]( AtomId a ) { return assign_[ a ] == 0; } );
    if( lit )
        return lit;
    for( AtomId v = 1; v < nvars_; ++v )
        if( assign_[ v ] == 0 )
            return Literal::neg( v );
    return std::nullopt;
}

Solver::Impl::StepResult Solver::Impl::decide_default()
{
    auto lit = default_literal();
    if( !lit )
        return {};
    new_level();
    assign( *lit, kNoReason );
    ++stats_.decisions;
    return { propagate(), false };
}

void Solver::Impl::check_atom( Literal l, const char* what ) const
{
    if( !is_atom( l.atom() ) )
        throw ProtocolError( std::string( what ) + " refers to unknown atom " + std::to_string( l.atom() ) );
}

void Solver::Impl::apply_fallback( const Fallback& f )
{
    for( auto& [ a, v ] : f.activity ) {
        check_atom( Literal::pos( a ), "Fallback" );
        if( v < 0 )
            throw ProtocolError( "Fallback activity for atom " + std::to_string( a ) + " is negative" );
    }
    for( auto& [ a, v ] : f.factor ) {
        check_atom( Literal::pos( a ), "Fallback" );
        if( v <= 0 )
            throw ProtocolError( "Fallback factor for atom " + std::to_string( a ) + " must be positive" );
    }
    for( auto& [ a, s ] : f.sign )
        check_atom( Literal::pos( a ), "Fallback" );
    for( auto& [ a, v ] : f.activity )
        activity_.set_activity( a, static_cast< double >( v ) );
    for( auto& [ a, v ] : f.factor )
        activity_.set_amplify( a, static_cast< double >( v ) );
    for( auto& [ a, s ] : f.sign )
        activity_.set_sign( a, s );
    fallback_.engage( f.choices );
}

Solver::Impl::StepResult Solver::Impl::choice_step()
{
    if( !heuristic_ || fallback_.take_default() )
        return decide_default();
    flush_true();
    CommandBatch batch = heuristic_->on_choice_required();
    if( batch.empty() )
        throw ProtocolError( "heuristic returned no command" );
    for( const Command& command : batch ) {
        if( auto c = std::get_if< Choose >( &command ) ) {
            check_atom( c->lit, "Choose" );
            Value v = value( c->lit );
            if( v == Value::True )
                continue;
            if( v == Value::False ) {
                flush_true();
                heuristic_->on_inco_choice( c->lit );
                return {};
            }
            new_level();
            assign( c->lit, kNoReason );
            ++stats_.decisions;
            if( auto conflict = propagate() )
                return { conflict, false };
        }
        else if( auto u = std::get_if< Unroll >( &command ) ) {
            if( !u->lit || u->lit->atom() == kBottom ) {
                restart();
                continue;
            }
            check_atom( *u->lit, "Unroll" );
            if( value( *u->lit ) == Value::Undefined )
                continue;
            int l = level_[ u->lit->atom() ];
            if( l == 0 )
                throw ProtocolError( "Unroll of literal " + std::to_string( u->lit->to_signed() ) + " assigned at level 0" );
            backjump( l - 1 );
        }
        else if( auto f = std::get_if< Fallback >( &command ) ) {
            apply_fallback( *f );
            fallback_.take_default();
            return decide_default();
        }
        else if( auto a = std::get_if< AddConstraint >( &command ) ) {
            std::vector< Literal > clause;
            for( Literal l : a->body ) {
                if( l.atom() != kBottom )
                    check_atom( l, "AddConstraint" );
                clause.push_back( ~l );
            }
            if( a->body.empty() )
                return { std::nullopt, true };
            StepResult r = add_search_clause( std::move( clause ) );
            if( r.conflict || r.incoherent )
                return r;
        }
    }
    return {};
}

bool Solver::Impl::out_of_budget()
{
    const auto& limits = options_.limits;
    if( limits.max_conflicts && stats_.conflicts >= *limits.max_conflicts )
        return true;
    if( limits.max_decisions && stats_.decisions >= *limits.max_decisions )
        return true;
    if( limits.timeout_seconds ) {
        double elapsed = std::chrono::duration< double >( Clock::now() - start_ ).count();
        if( elapsed >= *limits.timeout_seconds )
            return true;
    }
    return false;
}

Answer Solver::Impl::finish( Outcome outcome )
{
    flush_true();
    Answer answer;
    answer.outcome = outcome;
    if( outcome == Outcome::Coherent ) {
        for( AtomId a = 1; a < natoms_; ++a )
            if( assign_[ a ] > 0 )
                answer.witness.push_back( a );
        Interpretation candidate = Interpretation::from_true_atoms( natoms_, answer.witness );
        if( !is_answer_set( input_, candidate ) )
            throw std::logic_error( "internal error: the solver produced an assignment that is not an answer set" );
    }
    stats_.wall_ms = std::chrono::duration< double, std::milli >( Clock::now() - start_ ).count();
    answer.stats = stats_;
    return answer;
}

Solver::Solver( const GroundProgram& program, SolverOptions options, Heuristic* heuristic )
    : impl_( std::make_unique< Impl >( program, options, heuristic ) ) {}

Solver::~Solver() = default;

Answer Solver::solve()
{
    Impl& s = *impl_;
    s.start_ = Clock::now();
    if( s.options_.limits.timeout_seconds && *s.options_.limits.timeout_seconds <= 0 )
        return s.finish( Outcome::TimedOut );
    if( s.heuristic_ )
        s.heuristic_->on_search( s.view_ );
    s.flush_true();
    if( s.root_conflict_ )
        return s.finish( Outcome::Incoherent );

    auto handle = [ & ]( std::uint32_t conflict ) {
        if( !s.resolve( conflict ) )
            return false;
        if( s.options_.restarts && s.luby_.on_conflict() )
            s.restart();
        s.reduce_db();
        return true;
    };

    std::optional< std::uint32_t > conflict = s.propagate();
    while( true ) {
        if( conflict ) {
            if( !handle( *conflict ) )
                return s.finish( Outcome::Incoherent );
            conflict = s.propagate();
            if( s.out_of_budget() )
                return s.finish( Outcome::TimedOut );
            continue;
        }
        if( s.trail_.size() == s.nvars_ )
            return s.finish( Outcome::Coherent );
        if( s.out_of_budget() )
            return s.finish( Outcome::TimedOut );
        Impl::StepResult step = s.choice_step();
        if( step.incoherent )
            return s.finish( Outcome::Incoherent );
        conflict = step.conflict ? step.conflict : s.propagate();
    }
}

bool Solver::incoherent_at_root() const { return impl_->root_conflict_; }

std::optional< ConflictRecord > Solver::propagate()
{
    auto conflict = impl_->propagate();
    if( !conflict )
        return std::nullopt;
    return ConflictRecord{ *conflict, impl_->clauses_[ *conflict ].lits };
}

void Solver::decide( Literal lit )
{
    if( impl_->value( lit ) != Value::Undefined )
        throw std::invalid_argument( "decision on an assigned literal" );
    impl_->new_level();
    impl_->assign( lit, kNoReason );
    ++impl_->stats_.decisions;
}

LearnedConstraint Solver::analyze( const ConflictRecord& conflict )
{
    return impl_->analyze( conflict.clause );
}

void Solver::backjump( int level ) { impl_->backjump( level ); }
Value Solver::value( Literal lit ) const { return impl_->value( lit ); }
int Solver::level( AtomId var ) const { return impl_->assign_[ var ] == 0 ? -1 : impl_->level_[ var ]; }
int Solver::decision_level() const { return impl_->level(); }
std::vector< Literal > Solver::trail() const { return impl_->trail_; }
std::size_t Solver::atom_count() const { return impl_->natoms_; }
std::size_t Solver::variable_count() const { return impl_->nvars_; }
const ActivityTable& Solver::activity() const { return impl_->activity_; }
const Statistics& Solver::statistics() const { return impl_->stats_; }
const SearchView& Solver::view() const { return impl_->view_; }

Answer solve( const GroundProgram& program, Heuristic* heuristic, SolverOptions options )
{
    Solver solver( program, options, heuristic );
    return solver.solve();
}

}  // namespace dasp
