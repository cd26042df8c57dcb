#pragma once

#include <functional>
#include <string>
#include <unordered_map>

#include "sls/net/packet.h"
#include "sls/net/port.h"

namespace sls::net {

// A host or router. Packets addressed to this node go to the agent bound to
// their flow; everything else is forwarded by destination.
class Node {
 public:
  using AgentFn = std::function<void(const Packet&)>;

  Node(NodeId id, std::string name) : id_(id), name_(std::move(name)) {}

  void AddRoute(NodeId dst, Port* port) { routes_[dst] = port; }
  void SetDefaultRoute(Port* port) { default_route_ = port; }
  void AttachAgent(FlowId flow, AgentFn fn) { agents_[flow] = std::move(fn); }

  void Receive(Packet p);

  NodeId id() const { return id_; }
  const std::string& name() const { return name_; }

 private:
  NodeId id_;
  std::string name_;
  std::unordered_map<NodeId, Port*> routes_;
  Port* default_route_ = nullptr;
  std::unordered_map<FlowId, AgentFn> agents_;
};

}  // namespace sls::net
