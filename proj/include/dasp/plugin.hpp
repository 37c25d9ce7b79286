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

#pragma once

#include "dasp/heuristic.hpp"
#include "dasp/program.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <sys/types.h>

namespace dasp {

/* Raised by a channel when the peer does not answer in time. */
class ChannelTimeout : public std::runtime_error {
public:
    explicit ChannelTimeout( std::chrono::milliseconds waited );
    std::chrono::milliseconds waited;
};

class PluginSpawnError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * One synchronous request/response line pair. Lines carry no newline.
 * exchange() returns nothing once the peer has closed its output.
 */
class Channel {
public:
    virtual ~Channel() = default;
    virtual std::optional< std::string > exchange( const std::string& request ) = 0;
    virtual void close() {}
};

/* Answers requests with a function; used for in-process peers. */
class FunctionChannel : public Channel {
public:
    explicit FunctionChannel( std::function< std::string( const std::string& ) > f ) : f_( std::move( f ) ) {}
    std::optional< std::string > exchange( const std::string& request ) override;

private:
    std::function< std::string( const std::string& ) > f_;
};

/* DASP_PLUGIN_TIMEOUT_MS when set, else 10 s. */
std::chrono::milliseconds default_plugin_timeout();

/*
 * Child process speaking the protocol on stdin/stdout. The command line is
 * split on whitespace and looked up in PATH; stderr is inherited.
 */
class ProcessChannel : public Channel {
public:
    explicit ProcessChannel( const std::string& command, std::chrono::milliseconds timeout = default_plugin_timeout() );
    ~ProcessChannel() override;
    ProcessChannel( const ProcessChannel& ) = delete;
    ProcessChannel& operator=( const ProcessChannel& ) = delete;

    std::optional< std::string > exchange( const std::string& request ) override;
    /* EOF on the child's stdin, 2 s grace, then SIGKILL. Safe to call twice. */
    void close() override;

    pid_t pid() const { return pid_; }
    /* Raw wait status once the child has been reaped. */
    std::optional< int > exit_status() const { return status_; }

private:
    pid_t pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::chrono::milliseconds timeout_;
    std::string buffer_;
    std::optional< int > status_;
};

/* Logs "> request" and "< response" lines, then passes through. */
class RecordingChannel : public Channel {
public:
    RecordingChannel( Channel& inner, std::ostream& log ) : inner_( inner ), log_( log ) {}
    std::optional< std::string > exchange( const std::string& request ) override;
    void close() override { inner_.close(); }

private:
    Channel& inner_;
    std::ostream& log_;
};

/*
 * Heuristic living on the other side of a channel. Atom names and the
 * frozen set are exchanged in on_finished_parsing; afterwards every event
 * becomes one message. Any protocol violation closes the channel and throws
 * ProtocolError.
 */
class PluginHeuristic : public Heuristic {
public:
    enum class State { Handshake, Searching, Closed };

    explicit PluginHeuristic( Channel& channel ) : channel_( channel ) {}

    std::vector< AtomId > on_finished_parsing( const GroundProgram& program ) override;
    void on_search( const SearchView& view ) override;
    void on_inco_choice( Literal lit ) override;
    void on_conflict( std::optional< Literal > lit ) override;
    void on_learn( std::span< const Literal > lits ) override;
    void on_restart() override;
    void on_lits_true( std::span< const Literal > lits ) override;
    void on_unroll_lits( std::span< const Literal > lits ) override;
    CommandBatch on_choice_required() override;

    State state() const { return state_; }
    void close();

private:
    std::string request( const std::string& message, const char* event );
    void notify( const std::string& message, const char* event );
    /* Throws the malformed-JSON diagnostic when `e` comes from a parse failure. */
    void malformed( const ProtocolError& e, const std::string& line, const char* event );
    [[noreturn]] void violation( const std::string& what );

    Channel& channel_;
    State state_ = State::Handshake;
    std::deque< Literal > queue_;
};

/*
 * Plugin side of the protocol around an in-process heuristic: handle()
 * takes one event line and returns the response line.
 */
class WireServer {
public:
    WireServer( Heuristic& heuristic, const GroundProgram& program );
    std::string handle( const std::string& line );

private:
    Heuristic& heuristic_;
    const GroundProgram& program_;
    SearchView view_;
};

}  // namespace dasp
