// Payload shapes of the clusterlab session endpoint. The UI computes no
// algebra: every Laurent string is rendered verbatim from the server.
export {};
