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

#include "dasp/plugin.hpp"

#include "dasp/wire.hpp"

#include <cerrno>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sstream>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char** environ;

namespace dasp {

using namespace std::chrono;

ChannelTimeout::ChannelTimeout( milliseconds w )
    : std::runtime_error( "no response within " + std::to_string( w.count() ) + " ms" ), waited( w ) {}

std::optional< std::string > FunctionChannel::exchange( const std::string& request )
{
    return f_( request );
}

milliseconds default_plugin_timeout()
{
    if( const char* env = std::getenv( "DASP_PLUGIN_TIMEOUT_MS" ) ) {
        char* end = nullptr;
        long v = std::strtol( env, &end, 10 );
        if( end != env && *end == '\0' && v > 0 )
            return milliseconds( v );
    }
    return milliseconds( 10000 );
}

// ---------------------------------------------------------------------------
// ProcessChannel

namespace {

void ignore_sigpipe_once()
{
    static const bool done = [] {
        struct sigaction old{};
        if( sigaction( SIGPIPE, nullptr, &old ) == 0 && old.sa_handler == SIG_DFL )
            std::signal( SIGPIPE, SIG_IGN );
        return true;
    }();
    (void)done;
}

}  // namespace

ProcessChannel::ProcessChannel( const std::string& command, milliseconds timeout ) : timeout_( timeout )
{
    std::istringstream in( command );
    std::vector< std::string > words;
    for( std::string w; in >> w; )
        words.push_back( w );
    if( words.empty() )
        throw PluginSpawnError( "empty plugin command" );
    ignore_sigpipe_once();

    int in_pipe[ 2 ], out_pipe[ 2 ];
    if( pipe2( in_pipe, O_CLOEXEC ) != 0 )
        throw PluginSpawnError( std::string( "pipe: " ) + std::strerror( errno ) );
    if( pipe2( out_pipe, O_CLOEXEC ) != 0 ) {
        int e = errno;
        ::close( in_pipe[ 0 ] );
        ::close( in_pipe[ 1 ] );
        throw PluginSpawnError( std::string( "pipe: " ) + std::strerror( e ) );
    }

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init( &actions );
    posix_spawn_file_actions_adddup2( &actions, in_pipe[ 0 ], STDIN_FILENO );
    posix_spawn_file_actions_adddup2( &actions, out_pipe[ 1 ], STDOUT_FILENO );

    std::vector< char* > argv;
    for( auto& w : words )
        argv.push_back( w.data() );
    argv.push_back( nullptr );
    int rc = posix_spawnp( &pid_, argv[ 0 ], &actions, nullptr, argv.data(), environ );
    posix_spawn_file_actions_destroy( &actions );
    ::close( in_pipe[ 0 ] );
    ::close( out_pipe[ 1 ] );
    if( rc != 0 ) {
        ::close( in_pipe[ 1 ] );
        ::close( out_pipe[ 0 ] );
        pid_ = -1;
        throw PluginSpawnError( "cannot start plugin '" + words[ 0 ] + "': " + std::strerror( rc ) );
    }
    to_child_ = in_pipe[ 1 ];
    from_child_ = out_pipe[ 0 ];
}

ProcessChannel::~ProcessChannel()
{
    close();
}

std::optional< std::string > ProcessChannel::exchange( const std::string& request )
{
    if( to_child_ < 0 || from_child_ < 0 )
        return std::nullopt;
    std::string out = request + '\n';
    for( std::size_t done = 0; done < out.size(); ) {
        ssize_t n = ::write( to_child_, out.data() + done, out.size() - done );
        if( n < 0 ) {
            if( errno == EINTR )
                continue;
            return std::nullopt;  // EPIPE: the child is gone
        }
        done += static_cast< std::size_t >( n );
    }

    auto deadline = steady_clock::now() + timeout_;
    for( ;; ) {
        if( auto nl = buffer_.find( '\n' ); nl != std::string::npos ) {
            std::string line = buffer_.substr( 0, nl );
            buffer_.erase( 0, nl + 1 );
            return line;
        }
        auto left = duration_cast< milliseconds >( deadline - steady_clock::now() );
        if( left.count() <= 0 )
            throw ChannelTimeout( timeout_ );
        pollfd p{ from_child_, POLLIN, 0 };
        int r = ::poll( &p, 1, static_cast< int >( left.count() ) );
        if( r < 0 && errno == EINTR )
            continue;
        if( r == 0 )
            throw ChannelTimeout( timeout_ );
        char chunk[ 4096 ];
        ssize_t n = ::read( from_child_, chunk, sizeof chunk );
        if( n < 0 && errno == EINTR )
            continue;
        if( n <= 0 )
            return std::nullopt;
        buffer_.append( chunk, static_cast< std::size_t >( n ) );
    }
}

void ProcessChannel::close()
{
    if( to_child_ >= 0 ) {
        ::close( to_child_ );
        to_child_ = -1;
    }
    if( pid_ > 0 && !status_ ) {
        int status = 0;
        auto deadline = steady_clock::now() + seconds( 2 );
        pid_t r = 0;
        while( ( r = waitpid( pid_, &status, WNOHANG ) ) == 0 && steady_clock::now() < deadline )
            std::this_thread::sleep_for( milliseconds( 5 ) );
        if( r == 0 ) {
            ::kill( pid_, SIGKILL );
            r = waitpid( pid_, &status, 0 );
        }
        if( r == pid_ )
            status_ = status;
    }
    if( from_child_ >= 0 ) {
        ::close( from_child_ );
        from_child_ = -1;
    }
}

// ---------------------------------------------------------------------------

std::optional< std::string > RecordingChannel::exchange( const std::string& request )
{
    log_ << "> " << request << '\n';
    auto response = inner_.exchange( request );
    if( response )
        log_ << "< " << *response << '\n';
    return response;
}

// ---------------------------------------------------------------------------
// PluginHeuristic

void PluginHeuristic::violation( const std::string& what )
{
    close();
    throw ProtocolError( "plugin protocol violation: " + what );
}

void PluginHeuristic::close()
{
    if( state_ == State::Closed )
        return;
    state_ = State::Closed;
    channel_.close();
}

void PluginHeuristic::malformed( const ProtocolError& e, const std::string& line, const char* event )
{
    if( std::string_view( e.what() ).starts_with( "malformed JSON" ) )
        violation( std::string( "plugin sent malformed JSON in response to \"" ) + event + "\": " + line );
}

std::string PluginHeuristic::request( const std::string& message, const char* event )
{
    if( state_ == State::Closed )
        throw ProtocolError( std::string( "plugin protocol violation: session already closed before \"" ) + event + "\"" );
    std::optional< std::string > line;
    try {
        line = channel_.exchange( message );
    } catch( const ChannelTimeout& t ) {
        violation( "plugin timed out after " + std::to_string( t.waited.count() ) + " ms waiting for the response to \"" + event + "\"" );
    }
    if( !line )
        violation( std::string( "plugin closed its output before responding to \"" ) + event + "\"" );
    return *line;
}

void PluginHeuristic::notify( const std::string& message, const char* event )
{
    std::string line = request( message, event );
    try {
        wire::parse_ack( line );
    } catch( const wire::WireError& e ) {
        malformed( e, line, event );
        violation( std::string( "plugin answered the notification \"" ) + event + "\" with " + line + ", expected {\"ack\":true}" );
    }
}

std::vector< AtomId > PluginHeuristic::on_finished_parsing( const GroundProgram& program )
{
    for( AtomId a = 1; a < program.atom_count(); ++a )
        if( program.has_name( a ) )
            notify( wire::atom_event( a, program.name( a ) ), "atom" );
    std::string line = request( wire::parsing_done_event(), "parsing_done" );
    std::vector< AtomId > frozen;
    try {
        frozen = wire::parse_frozen( line );
    } catch( const wire::WireError& e ) {
        malformed( e, line, "parsing_done" );
        violation( std::string( "bad response to \"parsing_done\": " ) + e.what() );
    }
    for( AtomId a : frozen )
        if( a >= program.atom_count() )
            violation( "frozen atom " + std::to_string( a ) + " is not part of the program" );
    state_ = State::Searching;
    return frozen;
}

void PluginHeuristic::on_search( const SearchView& )
{
    notify( wire::search_event(), "search" );
}

void PluginHeuristic::on_inco_choice( Literal lit )
{
    queue_.clear();
    notify( wire::lit_event( "inco_choice", lit ), "inco_choice" );
}

void PluginHeuristic::on_conflict( std::optional< Literal > lit )
{
    queue_.clear();
    notify( wire::lit_event( "conflict", lit ), "conflict" );
}

void PluginHeuristic::on_learn( std::span< const Literal > lits )
{
    notify( wire::lits_event( "learn", lits ), "learn" );
}

void PluginHeuristic::on_restart()
{
    queue_.clear();
    notify( wire::restart_event(), "restart" );
}

void PluginHeuristic::on_lits_true( std::span< const Literal > lits )
{
    notify( wire::lits_event( "lit_true", lits ), "lit_true" );
}

void PluginHeuristic::on_unroll_lits( std::span< const Literal > lits )
{
    notify( wire::lits_event( "unroll_lit", lits ), "unroll_lit" );
}

CommandBatch PluginHeuristic::on_choice_required()
{
    if( !queue_.empty() ) {
        Literal l = queue_.front();
        queue_.pop_front();
        return { Choose{ l } };
    }
    std::string line = request( wire::choice_required_event(), "choice_required" );
    wire::ChoiceResponse r;
    try {
        r = wire::parse_choice_response( line );
    } catch( const wire::WireError& e ) {
        malformed( e, line, "choice_required" );
        violation( std::string( "bad response to \"choice_required\": " ) + e.what() );
    }
    if( !r.queue.empty() ) {
        queue_.assign( r.queue.begin() + 1, r.queue.end() );
        return { Choose{ r.queue.front() } };
    }
    return r.batch;
}

// ---------------------------------------------------------------------------
// WireServer

WireServer::WireServer( Heuristic& heuristic, const GroundProgram& program )
    : heuristic_( heuristic ), program_( program )
{
    view_.program = &program_;
    for( AtomId a = 1; a < program.atom_count(); ++a )
        view_.atoms.push_back( a );
    view_.rule_count = program.rule_count();
}

std::string WireServer::handle( const std::string& line )
{
    wire::Event ev = wire::parse_event( line );
    if( ev.kind == "atom" )
        return wire::ack();
    if( ev.kind == "parsing_done" ) {
        std::vector< AtomId > frozen = heuristic_.on_finished_parsing( program_ );
        return wire::frozen_response( frozen );
    }
    if( ev.kind == "choice_required" )
        return wire::command_response( heuristic_.on_choice_required() );
    if( ev.kind == "search" )
        heuristic_.on_search( view_ );
    else if( ev.kind == "lit_true" )
        heuristic_.on_lits_true( ev.lits );
    else if( ev.kind == "unroll_lit" )
        heuristic_.on_unroll_lits( ev.lits );
    else if( ev.kind == "conflict" )
        heuristic_.on_conflict( ev.lit );
    else if( ev.kind == "inco_choice" )
        heuristic_.on_inco_choice( ev.lit.value_or( Literal() ) );
    else if( ev.kind == "learn" )
        heuristic_.on_learn( ev.lits );
    else if( ev.kind == "restart" )
        heuristic_.on_restart();
    return wire::ack();
}

}  // namespace dasp
