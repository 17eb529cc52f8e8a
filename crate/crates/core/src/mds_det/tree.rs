use crate::graph::NodeId;
use crate::simulator::{Message, NodeContext, NodeProgram, Outbox, Payload, ProgramFault};

#[derive(Clone, Debug)]
pub struct TreeMsg(pub u32);

impl Message for TreeMsg {
    fn payload(&self) -> Payload {
        Payload::new(&[u64::from(self.0)])
    }
}

/// Two rounds on a forest. Every node announces its degree; nodes of degree
/// 0 or at least 2 join, and a leaf joins only when its neighbour is also a
/// leaf and has the higher id.
pub struct TreeProgram;

impl NodeProgram for TreeProgram {
    type State = bool;
    type Msg = TreeMsg;
    type Output = bool;

    fn init(&self, ctx: &NodeContext) -> (bool, bool) {
        let d = ctx.degree();
        (d != 1, d == 0)
    }

    fn on_round(
        &self,
        ctx: &NodeContext,
        member: &mut bool,
        inbox: &[(NodeId, TreeMsg)],
        out: &mut Outbox<TreeMsg>,
    ) -> Result<bool, ProgramFault> {
        if ctx.round == 1 {
            out.broadcast(TreeMsg(ctx.degree() as u32));
            return Ok(ctx.degree() != 1);
        }
        let (src, TreeMsg(d)) = inbox
            .first()
            .ok_or_else(|| ProgramFault("leaf heard nothing from its neighbour".into()))?;
        *member = *d == 1 && ctx.id < *src;
        Ok(true)
    }

    fn output(&self, _: &NodeContext, member: &bool) -> bool {
        *member
    }
}
